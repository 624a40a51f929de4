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

#include "exiid/mc_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "exiid/rng.hpp"
#include "exiid/serialize.hpp"

namespace exiid {
namespace {

struct RepResult {
  std::vector<double> p;  // configured tests
  double control = 1.0;
  std::vector<std::pair<Count, Count>> m;
};

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string SeriesLabel(std::string_view name, Count k) {
  std::string out(name);
  if (k != 0) out += ":" + std::to_string(k);
  return out;
}

RepResult RunRep(const ExperimentConfig& cfg, Count rep) {
  GeneratorSpec spec = cfg.generator;
  spec.seed = cfg.seed ^ rep;
  const CountProfile profile = Sample(spec);
  RepResult out;
  out.p.reserve(cfg.tests.size());
  for (const auto& t : cfg.tests) out.p.push_back(RunTest(t.kind, profile, t.options).p);
  // 1 - U lies in (0, 1].
  out.control = 1.0 - CounterRng(spec.seed, 1).NextDouble();
  out.m.assign(profile.multiplicities().begin(), profile.multiplicities().end());
  return out;
}

Series MakeSeries(std::string name, Count k, std::vector<double> pvalues,
                  const ExperimentConfig& cfg) {
  Series s;
  s.name = std::move(name);
  s.k = k;
  s.pvalues = std::move(pvalues);
  s.fractions = RejectionCurve(s.pvalues, cfg.alpha_grid);
  s.stderrs.reserve(s.fractions.size());
  for (double f : s.fractions) s.stderrs.push_back(RejectionStderr(f, cfg.reps));
  const double star = cfg.alpha_star;
  s.rate = RejectionCurve(s.pvalues, std::span<const double>(&star, 1)).front();
  s.rate_stderr = RejectionStderr(s.rate, cfg.reps);
  return s;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string TestSpec::Name() const {
  return name.empty() ? std::string(FamilyName(kind.family)) : name;
}

std::vector<double> DefaultAlphaGrid() {
  return {0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4,
          0.5,   0.6,   0.7,  0.8,  0.9,  0.99};
}

void ValidateConfig(const ExperimentConfig& cfg) {
  ValidateSpec(cfg.generator);
  if (cfg.reps < 1) throw InvalidArgument("reps must be >= 1");
  if (cfg.tests.empty()) throw InvalidArgument("experiment needs at least one test");
  if (cfg.alpha_grid.empty()) throw InvalidArgument("alpha_grid is empty");
  for (std::size_t i = 0; i < cfg.alpha_grid.size(); ++i) {
    const double a = cfg.alpha_grid[i];
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha_grid entries must lie in (0,1)");
    if (i > 0 && !(cfg.alpha_grid[i - 1] < a)) {
      throw InvalidArgument("alpha_grid must be strictly ascending");
    }
  }
  if (!(cfg.alpha_star > 0.0 && cfg.alpha_star < 1.0)) {
    throw InvalidArgument("alpha_star must lie in (0,1)");
  }
  std::set<std::string> seen;
  for (const auto& t : cfg.tests) {
    const std::string name = t.Name();
    if (name == kControlName || name == kBonferroniName) {
      throw InvalidArgument("test name '" + name + "' is reserved");
    }
    if (!seen.insert(SeriesLabel(name, t.kind.k)).second) {
      throw InvalidArgument("duplicate test '" + SeriesLabel(name, t.kind.k) +
                            "'; give it a distinct name");
    }
    ResolveVarianceSource(t.kind, t.options.variance);
    if (t.options.pvalue == PValueMethod::kBernstein) {
      BernsteinRange(t.kind);
      if (t.options.variance == VarianceSource::kEmpirical) {
        throw InvalidArgument("Bernstein p-values need a theoretical variance bound");
      }
    }
  }
  std::set<std::string> known = seen;
  known.insert(std::string(kControlName));
  if (cfg.tests.size() > 1) known.insert(std::string(kBonferroniName));
  for (const auto& [name, rate] : cfg.assert_min_power) {
    if (!known.count(name)) throw InvalidArgument("assert_min_power names unknown series '" + name + "'");
    if (!(rate >= 0.0 && rate <= 1.0)) throw InvalidArgument("assert_min_power rates must lie in [0,1]");
  }
}

bool ExperimentReport::AllAssertionsPassed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

const Series* ExperimentReport::Find(std::string_view name, Count k) const {
  for (const auto& s : series) {
    if (s.name == name && s.k == k) return &s;
  }
  return nullptr;
}

std::vector<double> RejectionCurve(std::span<const double> pvalues,
                                   std::span<const double> alpha_grid) {
  if (pvalues.empty()) throw InvalidArgument("rejection curve of an empty p-value list");
  std::vector<double> sorted(pvalues.begin(), pvalues.end());
  for (double p : sorted) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p-values must lie in [0,1]");
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    const auto hits = std::upper_bound(sorted.begin(), sorted.end(), a) - sorted.begin();
    out.push_back(static_cast<double>(hits) / static_cast<double>(sorted.size()));
  }
  return out;
}

double RejectionStderr(double fraction, Count reps) {
  return std::sqrt(fraction * (1.0 - fraction) / static_cast<double>(reps));
}

ExperimentReport RunExperiment(const ExperimentConfig& cfg, unsigned workers) {
  ValidateConfig(cfg);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<Count>(workers, cfg.reps));

  std::vector<RepResult> reps(cfg.reps);
  std::atomic<Count> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (Count r = next++; r < cfg.reps && !failed; r = next++) {
      try {
        reps[r] = RunRep(cfg, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  ExperimentReport report;
  report.config = cfg;
  const std::size_t num_tests = cfg.tests.size();
  for (std::size_t t = 0; t < num_tests; ++t) {
    std::vector<double> ps(cfg.reps);
    for (Count r = 0; r < cfg.reps; ++r) ps[r] = reps[r].p[t];
    report.series.push_back(MakeSeries(cfg.tests[t].Name(), cfg.tests[t].kind.k, std::move(ps), cfg));
  }
  if (num_tests > 1) {
    std::vector<double> ps(cfg.reps);
    for (Count r = 0; r < cfg.reps; ++r) {
      ps[r] = CombineBonferroni(std::span<const double>(reps[r].p), cfg.alpha_star).p;
    }
    report.series.push_back(MakeSeries(std::string(kBonferroniName), 0, std::move(ps), cfg));
  }
  {
    std::vector<double> ps(cfg.reps);
    for (Count r = 0; r < cfg.reps; ++r) ps[r] = reps[r].control;
    report.series.push_back(MakeSeries(std::string(kControlName), 0, std::move(ps), cfg));
  }

  // Integer sums keep the average independent of summation order.
  Count k_max = 0;
  for (const auto& r : reps) {
    if (!r.m.empty()) k_max = std::max(k_max, r.m.back().first);
  }
  std::vector<Count> sums(k_max + 1, 0);
  for (const auto& r : reps) {
    for (const auto& [k, m] : r.m) sums[k] += m;
  }
  std::vector<Count> first(k_max + 1, 0);
  for (const auto& [k, m] : reps.front().m) first[k] = m;
  const auto expected =
      ExpectedMk(UncorruptedTheta(cfg.generator), cfg.generator.n, k_max);
  for (Count k = 1; k <= k_max; ++k) {
    report.mk.push_back(MkRow{k, first[k],
                              static_cast<double>(sums[k]) / static_cast<double>(cfg.reps),
                              expected[k - 1]});
  }

  if (cfg.assert_valid) {
    const double limit =
        cfg.alpha_star + 3.0 * RejectionStderr(cfg.alpha_star, cfg.reps);
    for (std::size_t t = 0; t < num_tests; ++t) {
      const auto& s = report.series[t];
      report.assertions.push_back(
          Assertion{"valid " + SeriesLabel(s.name, s.k) + ": rate " + Num(s.rate) + " <= " + Num(limit),
                    s.rate <= limit});
    }
  }
  for (const auto& [label, min_rate] : cfg.assert_min_power) {
    for (const auto& s : report.series) {
      if (SeriesLabel(s.name, s.k) != label) continue;
      report.assertions.push_back(Assertion{
          "power " + label + ": rate " + Num(s.rate) + " >= " + Num(min_rate), s.rate >= min_rate});
    }
  }
  return report;
}

std::string PValuesCsv(const ExperimentReport& report) {
  std::string out = "rep,test,k,p\n";
  for (Count r = 0; r < report.config.reps; ++r) {
    for (const auto& s : report.series) {
      out += std::to_string(r) + "," + s.name + "," + std::to_string(s.k) + "," +
             Num(s.pvalues[r]) + "\n";
    }
  }
  return out;
}

std::vector<CurveRow> CurveRows(const ExperimentReport& report) {
  std::vector<CurveRow> rows;
  for (const auto& s : report.series) {
    for (std::size_t i = 0; i < report.config.alpha_grid.size(); ++i) {
      rows.push_back(CurveRow{s.name, s.k, report.config.alpha_grid[i], s.fractions[i], s.stderrs[i]});
    }
  }
  return rows;
}

std::string CurvesCsv(const ExperimentReport& report) {
  std::string out = "test,k,alpha,fraction,stderr\n";
  for (const auto& r : CurveRows(report)) {
    out += r.test + "," + std::to_string(r.k) + "," + Num(r.alpha) + "," + Num(r.fraction) + "," +
           Num(r.stderr_) + "\n";
  }
  return out;
}

std::string MkCsv(const ExperimentReport& report) {
  std::string out = "k,sample_m,avg_m,expected_m\n";
  for (const auto& r : report.mk) {
    out += std::to_string(r.k) + "," + std::to_string(r.sample_m) + "," + Num(r.avg_m) + "," +
           Num(r.expected_m) + "\n";
  }
  return out;
}

std::vector<CurveRow> ParseCurvesCsv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != "test,k,alpha,fraction,stderr") {
    throw InvalidArgument("curves.csv: bad header");
  }
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) f.push_back(cell);
    if (f.size() != 5) throw InvalidArgument("curves.csv: expected 5 fields in '" + line + "'");
    try {
      rows.push_back(CurveRow{f[0], std::stoull(f[1]), std::stod(f[2]), std::stod(f[3]),
                              std::stod(f[4])});
    } catch (const std::logic_error&) {
      throw InvalidArgument("curves.csv: bad number in '" + line + "'");
    }
  }
  return rows;
}

void WriteReport(const ExperimentReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path base(dir);
  WriteFile(base / "pvalues.csv", PValuesCsv(report));
  WriteFile(base / "curves.csv", CurvesCsv(report));
  WriteFile(base / "mk.csv", MkCsv(report));
  WriteFile(base / "report.json", ReportToJson(report));
}

}  // namespace exiid
