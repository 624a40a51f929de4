// Copyright 2026 The exiid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// exiid command-line tool. Talks to the library through the C API only.
//
// Exit status: 0 success / not rejected, 1 error, 2 `test` rejected at
// alpha, 3 a `power` assertion or `verify` check failed.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "exiid/exiid.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;
constexpr int kExitAssertion = 3;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Check(exiid_status status) {
  if (status != EXIID_OK) throw Error(exiid_last_error());
}

struct StringDeleter {
  void operator()(char* s) const { exiid_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string Take(char* s) {
  OwnedString owned(s);
  return std::string(owned.get());
}

struct ProfileDeleter {
  void operator()(exiid_profile* p) const { exiid_profile_free(p); }
};
using Profile = std::unique_ptr<exiid_profile, ProfileDeleter>;

std::string ReadAll(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), {});
  if (in.bad()) throw Error("failed reading " + path);
  return data;
}

void Emit(const std::string& content, const std::string& path) {
  std::string text = content;
  if (text.empty() || text.back() != '\n') text += '\n';
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw Error("failed writing " + path);
}

int ModeId(const std::string& mode) {
  return mode == "multinomial" ? EXIID_MODE_MULTINOMIAL : EXIID_MODE_POISSON;
}

int VarianceId(const std::string& v) {
  if (v == "empirical") return EXIID_VARIANCE_EMPIRICAL;
  if (v == "theoretical") return EXIID_VARIANCE_THEORETICAL;
  return EXIID_VARIANCE_AUTO;
}

struct Common {
  std::uint64_t seed = 0;
  std::string output;
};

void AddCommon(CLI::App* cmd, Common& c, const std::string& seed_help) {
  cmd->add_option("--seed", c.seed, seed_help);
  cmd->add_option("--output", c.output, "Output path ('-' or absent: standard output)");
}

// --- count -----------------------------------------------------------------

struct CountArgs {
  Common common;
  std::string input;
  bool hash128 = false;
  bool with_counts = false;
};

int RunCount(const CountArgs& a) {
  const std::string data = ReadAll(a.input);
  if (a.hash128) {
    std::cerr << "warning: --hash128 merges items whose 128-bit digests collide\n";
  }
  exiid_counter* raw = nullptr;
  Check(exiid_counter_new(a.hash128 ? 1 : 0, &raw));
  std::unique_ptr<exiid_counter, void (*)(exiid_counter*)> counter(raw, exiid_counter_free);
  // Items are the byte strings between '\n' delimiters; a final newline
  // does not start another item.
  std::size_t start = 0;
  while (start < data.size()) {
    std::size_t end = data.find('\n', start);
    if (end == std::string::npos) end = data.size();
    Check(exiid_counter_add(counter.get(), data.data() + start, end - start));
    start = end + 1;
  }
  exiid_profile* p = nullptr;
  Check(exiid_counter_finish(counter.get(), &p));
  Profile profile(p);
  char* json = nullptr;
  Check(exiid_profile_to_json(profile.get(), a.with_counts ? 1 : 0, &json));
  Emit(Take(json), a.common.output);
  return kExitOk;
}

// --- test ------------------------------------------------------------------

struct TestArgs {
  Common common;
  std::string profile;
  std::string tests;
  std::string mode = "poisson";
  std::string cn = "off";
  std::string variance = "auto";
  std::string pvalue = "gaussian";
  double alpha = 0.05;
  bool no_correction = false;
};

int RunTestCmd(const TestArgs& a) {
  exiid_profile* p = nullptr;
  Check(exiid_profile_from_json(ReadAll(a.profile).c_str(), &p));
  Profile profile(p);
  exiid_test_options opts;
  exiid_test_options_default(&opts);
  opts.mode = ModeId(a.mode);
  opts.cn_correction = a.cn == "on" ? 1 : 0;
  opts.variance = VarianceId(a.variance);
  opts.pvalue = a.pvalue == "bernstein" ? EXIID_PVALUE_BERNSTEIN : EXIID_PVALUE_GAUSSIAN;
  char* json = nullptr;
  int reject = 0;
  Check(exiid_run_tests(profile.get(), a.tests.c_str(), &opts, a.alpha, a.no_correction ? 0 : 1,
                        &json, &reject));
  Emit(Take(json), a.common.output);
  return reject ? kExitRejected : kExitOk;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::string kind = "uniform";
  std::uint64_t d = 100;
  std::uint64_t decks = 1;
  std::uint64_t n = 1000;
  std::string corruption = "none";
  std::string format = "profile";
};

int RunSimulate(const SimulateArgs& a) {
  nlohmann::json spec = {{"kind", a.kind},   {"d", a.d},
                         {"decks", a.decks}, {"n", a.n},
                         {"corruption", a.corruption}, {"seed", a.common.seed}};
  exiid_profile* p = nullptr;
  Check(exiid_sample(spec.dump().c_str(), &p));
  Profile profile(p);
  char* json = nullptr;
  Check(exiid_profile_to_json(profile.get(), 1, &json));
  const std::string doc = Take(json);
  if (a.format == "profile") {
    Emit(doc, a.common.output);
    return kExitOk;
  }
  // Item stream: each label repeated by its count, grouped by label.
  const auto parsed = nlohmann::json::parse(doc);
  std::string items;
  for (const auto& [label, count] : parsed.at("counts").items()) {
    for (std::uint64_t i = 0; i < count.get<std::uint64_t>(); ++i) items += label + "\n";
  }
  if (items.empty()) {
    if (!a.common.output.empty() && a.common.output != "-") {
      std::ofstream out(a.common.output, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot open " + a.common.output + " for writing");
    }
    return kExitOk;
  }
  Emit(items, a.common.output);
  return kExitOk;
}

// --- power -----------------------------------------------------------------

struct PowerArgs {
  Common common;
  std::string config;
  unsigned workers = 1;
  std::optional<std::uint64_t> reps;
  bool seed_given = false;
};

int RunPower(PowerArgs& a) {
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(ReadAll(a.config));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("config: malformed JSON: ") + e.what());
  }
  if (a.seed_given) cfg["seed"] = a.common.seed;
  if (a.reps) cfg["reps"] = *a.reps;
  exiid_report* raw = nullptr;
  Check(exiid_experiment_run(cfg.dump().c_str(), a.workers, &raw));
  std::unique_ptr<exiid_report, void (*)(exiid_report*)> report(raw, exiid_report_free);
  const std::string dir = a.common.output.empty() ? "." : a.common.output;
  Check(exiid_report_write(report.get(), dir.c_str()));
  char* summary = nullptr;
  Check(exiid_report_summary(report.get(), &summary));
  std::cout << Take(summary) << "\n";
  std::cerr << "wrote pvalues.csv, curves.csv, mk.csv, report.json to " << dir << "\n";
  int passed = 0;
  Check(exiid_report_passed(report.get(), &passed));
  if (!passed) {
    std::cerr << "error: at least one assertion in the config failed\n";
    return kExitAssertion;
  }
  return kExitOk;
}

// --- bounds ----------------------------------------------------------------

struct BoundsArgs {
  Common common;
  std::string tests;
  std::string kind;
  std::uint64_t k = 0;
  std::uint64_t n = 1000;
  std::string mode = "poisson";
};

int RunBounds(const BoundsArgs& a) {
  std::string tests = a.tests;
  if (!a.kind.empty()) {
    if (!tests.empty()) throw Error("use either --tests or --kind/--k");
    tests = a.kind;
    if (a.k != 0) tests += ":" + std::to_string(a.k);
  }
  char* json = nullptr;
  Check(exiid_bounds_table(tests.c_str(), a.n, ModeId(a.mode), &json));
  Emit(Take(json), a.common.output);
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string suite = "all";
};

int RunVerify(const VerifyArgs& a) {
  char* json = nullptr;
  int passed = 0;
  Check(exiid_verify(a.suite.c_str(), &json, &passed));
  const std::string doc = Take(json);
  Emit(doc, a.common.output);
  for (const auto& c : nlohmann::json::parse(doc).at("checks")) {
    std::cerr << (c.at("passed").get<bool>() ? "PASS " : "FAIL ")
              << c.at("suite").get<std::string>() << ": " << c.at("name").get<std::string>()
              << " (" << c.at("detail").get<std::string>() << ")\n";
  }
  return passed ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant tests of the iid hypothesis on count multiplicities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(exiid_version()));

  const std::string unused_seed = "Accepted for uniformity; this command is deterministic";

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Count newline-delimited items into a profile");
  count->add_option("input", count_args.input, "Item file ('-' or absent: standard input)");
  count->add_flag("--hash128", count_args.hash128, "Key items by 128-bit digests (lossy)");
  count->add_flag("--with-counts", count_args.with_counts, "Include first-order counts");
  AddCommon(count, count_args.common, unused_seed);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "Run invariant tests on a profile document");
  test->add_option("profile", test_args.profile, "Profile file ('-' or absent: standard input)");
  test->add_option("--tests", test_args.tests, "Comma list, e.g. even,odd,count:2,slope:2");
  test->add_option("--mode", test_args.mode)->check(CLI::IsMember({"poisson", "multinomial"}));
  test->add_option("--cn", test_args.cn, "Multiply p by c_n")->check(CLI::IsMember({"on", "off"}));
  test->add_option("--variance", test_args.variance)
      ->check(CLI::IsMember({"auto", "empirical", "theoretical"}));
  test->add_option("--pvalue", test_args.pvalue)->check(CLI::IsMember({"gaussian", "bernstein"}));
  test->add_option("--alpha", test_args.alpha)->check(CLI::Range(0.0, 1.0));
  test->add_flag("--no-correction", test_args.no_correction,
                 "Reject when any single test has p <= alpha (no Bonferroni)");
  AddCommon(test, test_args.common, unused_seed);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Draw one synthetic sample");
  simulate->add_option("--kind", sim_args.kind)
      ->check(CLI::IsMember({"uniform", "linear", "cards"}));
  simulate->add_option("--d", sim_args.d, "Support size (uniform, linear)");
  simulate->add_option("--decks", sim_args.decks, "Number of decks (cards)");
  simulate->add_option("--n", sim_args.n, "Sample size");
  simulate->add_option("--corruption", sim_args.corruption)
      ->check(CLI::IsMember({"none", "even_n", "even_m", "no_empty", "no_unique"}));
  simulate->add_option("--format", sim_args.format)->check(CLI::IsMember({"profile", "items"}));
  AddCommon(simulate, sim_args.common, "Generator seed");

  PowerArgs power_args;
  auto* power = app.add_subcommand("power", "Run a Monte Carlo experiment from a config");
  power->add_option("config", power_args.config, "Config file ('-' for standard input)")
      ->required();
  power->add_option("--workers", power_args.workers, "Worker threads (0: all cores)");
  power->add_option("--reps", power_args.reps, "Override the config's repetitions");
  power->add_option("--seed", power_args.common.seed, "Override the config's seed");
  power->add_option("--output", power_args.common.output, "Output directory (default: .)");

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "Tabulate mean and variance bounds");
  bounds->add_option("--tests", bounds_args.tests, "Comma list of tests");
  bounds->add_option("--kind", bounds_args.kind, "Single test family");
  bounds->add_option("--k", bounds_args.k, "k for --kind");
  bounds->add_option("--n", bounds_args.n, "Sample size");
  bounds->add_option("--mode", bounds_args.mode)->check(CLI::IsMember({"poisson", "multinomial"}));
  AddCommon(bounds, bounds_args.common, unused_seed);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run numerical self-checks");
  verify->add_option("--suite", verify_args.suite)
      ->check(CLI::IsMember({"all", "stirling", "pmf", "ratio", "bruteforce"}));
  AddCommon(verify, verify_args.common, unused_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*count) return RunCount(count_args);
    if (*test) return RunTestCmd(test_args);
    if (*simulate) return RunSimulate(sim_args);
    if (*power) {
      power_args.seed_given = power->count("--seed") > 0;
      return RunPower(power_args);
    }
    if (*bounds) return RunBounds(bounds_args);
    if (*verify) return RunVerify(verify_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
