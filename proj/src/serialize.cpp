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

#include "exiid/serialize.hpp"

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <string>

#include "json.hpp"

namespace exiid {
namespace {

using Json = nlohmann::json;

Json Parse(std::string_view text, const char* what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string(what) + ": malformed JSON: " + e.what());
  }
}

void RequireObject(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + " must be an object");
}

void RejectUnknownKeys(const Json& j, std::initializer_list<std::string_view> allowed,
                       const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidArgument(where + ": unknown field '" + key + "'");
  }
}

Count GetCount(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<Count>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<Count>();
  throw InvalidArgument(where + " must be a non-negative integer");
}

double GetDouble(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidArgument(where + " must be a number");
  return j.get<double>();
}

bool GetBool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw InvalidArgument(where + " must be true or false");
  return j.get<bool>();
}

std::string GetString(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidArgument(where + " must be a string");
  return j.get<std::string>();
}

Count ParseKey(const std::string& key, const std::string& where) {
  Count v = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
  if (key.empty() || ec != std::errc() || ptr != key.data() + key.size()) {
    throw InvalidArgument(where + ": key '" + key + "' is not a non-negative integer");
  }
  return v;
}

Json Finite(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json ResultJson(const TestResult& r) {
  Json j;
  j["kind"] = FamilyName(r.kind.family);
  j["k"] = r.kind.has_k() ? Json(r.kind.k) : Json(nullptr);
  j["statistic"] = Finite(r.statistic);
  j["tau_ub"] = Finite(r.tau_ub);
  j["v_ub"] = Finite(r.v_ub);
  j["z"] = Finite(r.z);
  j["log_p"] = Finite(r.log_p);
  j["p"] = r.p;
  j["applicable"] = r.applicable;
  j["notes"] = r.notes;
  return j;
}

Json GeneratorJson(const GeneratorSpec& spec, bool with_seed) {
  Json j;
  j["kind"] = GeneratorKindName(spec.kind);
  j["d"] = spec.d;
  j["decks"] = spec.decks;
  j["n"] = spec.n;
  j["corruption"] = CorruptionName(spec.corruption);
  if (with_seed) j["seed"] = spec.seed;
  return j;
}

GeneratorSpec GeneratorFromJson(const Json& j, bool allow_seed) {
  const std::string where = "generator";
  RequireObject(j, where);
  if (allow_seed) {
    RejectUnknownKeys(j, {"kind", "d", "decks", "n", "corruption", "seed"}, where);
  } else {
    if (j.contains("seed")) {
      throw InvalidArgument("generator.seed is not used in experiments; set the top-level seed");
    }
    RejectUnknownKeys(j, {"kind", "d", "decks", "n", "corruption"}, where);
  }
  GeneratorSpec spec;
  if (j.contains("kind")) spec.kind = ParseGeneratorKind(GetString(j["kind"], where + ".kind"));
  if (j.contains("d")) spec.d = GetCount(j["d"], where + ".d");
  if (j.contains("decks")) spec.decks = GetCount(j["decks"], where + ".decks");
  if (j.contains("n")) spec.n = GetCount(j["n"], where + ".n");
  if (j.contains("corruption")) {
    spec.corruption = ParseCorruption(GetString(j["corruption"], where + ".corruption"));
  }
  if (j.contains("seed")) spec.seed = GetCount(j["seed"], where + ".seed");
  ValidateSpec(spec);
  return spec;
}

Json TestSpecJson(const TestSpec& t) {
  Json j;
  j["test"] = t.kind.Label();
  if (!t.name.empty()) j["name"] = t.name;
  j["mode"] = ModeName(t.options.mode);
  j["cn"] = t.options.cn_correction;
  j["variance"] = VarianceSourceName(t.options.variance);
  j["pvalue"] = PValueMethodName(t.options.pvalue);
  return j;
}

TestSpec TestSpecFromJson(const Json& j, std::size_t index) {
  const std::string where = "tests[" + std::to_string(index) + "]";
  TestSpec t;
  if (j.is_string()) {
    t.kind = ParseTestKind(j.get<std::string>());
    return t;
  }
  RequireObject(j, where);
  RejectUnknownKeys(j, {"test", "name", "mode", "cn", "variance", "pvalue"}, where);
  if (!j.contains("test")) throw InvalidArgument(where + ".test is required");
  t.kind = ParseTestKind(GetString(j["test"], where + ".test"));
  if (j.contains("name")) t.name = GetString(j["name"], where + ".name");
  if (j.contains("mode")) t.options.mode = ParseMode(GetString(j["mode"], where + ".mode"));
  if (j.contains("cn")) t.options.cn_correction = GetBool(j["cn"], where + ".cn");
  if (j.contains("variance")) {
    t.options.variance = ParseVarianceSource(GetString(j["variance"], where + ".variance"));
  }
  if (j.contains("pvalue")) {
    t.options.pvalue = ParsePValueMethod(GetString(j["pvalue"], where + ".pvalue"));
  }
  return t;
}

Json ConfigJson(const ExperimentConfig& cfg) {
  Json j;
  j["generator"] = GeneratorJson(cfg.generator, false);
  j["tests"] = Json::array();
  for (const auto& t : cfg.tests) j["tests"].push_back(TestSpecJson(t));
  j["reps"] = cfg.reps;
  j["alpha_grid"] = cfg.alpha_grid;
  j["alpha_star"] = cfg.alpha_star;
  j["seed"] = cfg.seed;
  j["assert_valid"] = cfg.assert_valid;
  j["assert_min_power"] = Json::object();
  for (const auto& [name, rate] : cfg.assert_min_power) j["assert_min_power"][name] = rate;
  return j;
}

}  // namespace

std::string ProfileToJson(const CountProfile& p, bool include_counts) {
  // Written by hand so keys come out in numeric rather than string order.
  std::string body = "{";
  bool first = true;
  for (const auto& [k, mk] : p.multiplicities()) {
    body += (first ? "\"" : ",\"") + std::to_string(k) + "\":" + std::to_string(mk);
    first = false;
  }
  body += "}";
  std::string out = "{\"n\":" + std::to_string(p.n()) + ",\"m\":" + body;
  if (include_counts && p.first_order()) {
    out += ",\"counts\":{";
    first = true;
    for (const auto& [x, c] : *p.first_order()) {
      out += (first ? "\"" : ",\"") + std::to_string(x) + "\":" + std::to_string(c);
      first = false;
    }
    out += "}";
  }
  out += "}";
  return out;
}

CountProfile ProfileFromJson(std::string_view text) {
  const Json j = Parse(text, "profile");
  RequireObject(j, "profile");
  RejectUnknownKeys(j, {"n", "m", "counts"}, "profile");
  if (!j.contains("n")) throw InvalidArgument("profile: field 'n' is required");
  if (!j.contains("m")) throw InvalidArgument("profile: field 'm' is required");
  const Count n = GetCount(j["n"], "profile.n");
  RequireObject(j["m"], "profile.m");
  Multiplicities m;
  for (const auto& [key, value] : j["m"].items()) {
    m[ParseKey(key, "profile.m")] = GetCount(value, "profile.m[\"" + key + "\"]");
  }
  std::optional<FirstOrderCounts> counts;
  if (j.contains("counts")) {
    RequireObject(j["counts"], "profile.counts");
    counts.emplace();
    for (const auto& [key, value] : j["counts"].items()) {
      (*counts)[ParseKey(key, "profile.counts")] =
          GetCount(value, "profile.counts[\"" + key + "\"]");
    }
  }
  CountProfile p(n, std::move(m), std::move(counts));
  if (auto violation = ValidateProfile(p)) throw InvalidArgument("invalid profile: " + *violation);
  return p;
}

std::string ResultsToJson(std::span<const TestResult> results) {
  Json j = Json::array();
  for (const auto& r : results) j.push_back(ResultJson(r));
  return j.dump();
}

SuiteDecision DecideSuite(std::span<const TestResult> results, const TestOptions& opts,
                          double alpha, bool bonferroni) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  Json j;
  j["n"] = results.empty() ? Count{0} : results.front().n;
  j["mode"] = ModeName(opts.mode);
  j["cn"] = opts.cn_correction;
  j["variance"] = VarianceSourceName(opts.variance);
  j["pvalue"] = PValueMethodName(opts.pvalue);
  j["alpha"] = alpha;
  j["correction"] = bonferroni ? "bonferroni" : "none";
  j["results"] = Json::array();
  bool any = false;
  for (const auto& r : results) {
    Json rj = ResultJson(r);
    rj["reject"] = r.p <= alpha;
    any = any || r.p <= alpha;
    j["results"].push_back(std::move(rj));
  }
  SuiteDecision d;
  if (bonferroni) {
    const CombinedResult c = CombineBonferroni(results, alpha);
    j["combined"] = {{"p", c.p}, {"reject", c.reject}, {"fired", results[c.fired].kind.Label()}};
    d.reject = c.reject;
  } else {
    d.reject = any;
  }
  j["reject"] = d.reject;
  d.json = j.dump(2);
  return d;
}

std::string GeneratorSpecToJson(const GeneratorSpec& spec) {
  return GeneratorJson(spec, true).dump();
}

GeneratorSpec GeneratorSpecFromJson(std::string_view text) {
  return GeneratorFromJson(Parse(text, "generator"), true);
}

std::string ConfigToJson(const ExperimentConfig& cfg) { return ConfigJson(cfg).dump(2); }

ExperimentConfig ConfigFromJson(std::string_view text) {
  const Json j = Parse(text, "config");
  RequireObject(j, "config");
  RejectUnknownKeys(j,
                    {"generator", "tests", "reps", "alpha_grid", "alpha_star", "seed",
                     "assert_valid", "assert_min_power"},
                    "config");
  ExperimentConfig cfg;
  if (!j.contains("generator")) throw InvalidArgument("config: field 'generator' is required");
  cfg.generator = GeneratorFromJson(j["generator"], false);
  if (j.contains("tests")) {
    if (!j["tests"].is_array()) throw InvalidArgument("config.tests must be a list");
    std::size_t i = 0;
    for (const auto& t : j["tests"]) cfg.tests.push_back(TestSpecFromJson(t, i++));
  } else {
    for (const auto& kind : DefaultSuite()) cfg.tests.push_back(TestSpec{kind, {}, ""});
  }
  if (j.contains("reps")) cfg.reps = GetCount(j["reps"], "config.reps");
  if (j.contains("alpha_grid")) {
    if (!j["alpha_grid"].is_array()) throw InvalidArgument("config.alpha_grid must be a list");
    cfg.alpha_grid.clear();
    for (const auto& a : j["alpha_grid"]) cfg.alpha_grid.push_back(GetDouble(a, "config.alpha_grid"));
  }
  if (j.contains("alpha_star")) cfg.alpha_star = GetDouble(j["alpha_star"], "config.alpha_star");
  if (j.contains("seed")) cfg.seed = GetCount(j["seed"], "config.seed");
  if (j.contains("assert_valid")) cfg.assert_valid = GetBool(j["assert_valid"], "config.assert_valid");
  if (j.contains("assert_min_power")) {
    RequireObject(j["assert_min_power"], "config.assert_min_power");
    for (const auto& [name, rate] : j["assert_min_power"].items()) {
      cfg.assert_min_power[name] = GetDouble(rate, "config.assert_min_power." + name);
    }
  }
  ValidateConfig(cfg);
  return cfg;
}

std::string ReportToJson(const ExperimentReport& report) {
  Json j;
  j["config"] = ConfigJson(report.config);
  j["series"] = Json::array();
  for (const auto& s : report.series) {
    Json sj;
    sj["test"] = s.name;
    sj["k"] = s.k;
    sj["rate"] = s.rate;
    sj["rate_stderr"] = s.rate_stderr;
    sj["alpha"] = report.config.alpha_grid;
    sj["fraction"] = s.fractions;
    sj["stderr"] = s.stderrs;
    sj["pvalues"] = s.pvalues;
    j["series"].push_back(std::move(sj));
  }
  j["mk"] = Json::array();
  for (const auto& r : report.mk) {
    j["mk"].push_back(
        {{"k", r.k}, {"sample_m", r.sample_m}, {"avg_m", r.avg_m}, {"expected_m", r.expected_m}});
  }
  j["assertions"] = Json::array();
  for (const auto& a : report.assertions) {
    j["assertions"].push_back({{"description", a.description}, {"passed", a.passed}});
  }
  j["all_passed"] = report.AllAssertionsPassed();
  return j.dump(2);
}

}  // namespace exiid
