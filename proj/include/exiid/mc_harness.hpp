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

// Monte Carlo validity and power experiments.
//
// Repetition r samples from the generator with seed (seed ^ r), runs every
// configured test and records its p-value, plus a uniform control p-value
// ("u") drawn from a separate stream of the same seed. When more than one
// test is configured a Bonferroni series ("bonferroni") is added.

#ifndef EXIID_MC_HARNESS_HPP_
#define EXIID_MC_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exiid/count_profile.hpp"
#include "exiid/generators.hpp"
#include "exiid/iid_tests.hpp"

namespace exiid {

inline constexpr std::string_view kControlName = "u";
inline constexpr std::string_view kBonferroniName = "bonferroni";

struct TestSpec {
  TestKind kind;
  TestOptions options;
  // CSV/report name; defaults to the family name.
  std::string name;

  std::string Name() const;
  friend bool operator==(const TestSpec&, const TestSpec&) = default;
};

std::vector<double> DefaultAlphaGrid();

struct ExperimentConfig {
  GeneratorSpec generator;
  std::vector<TestSpec> tests;
  Count reps = 2000;
  std::vector<double> alpha_grid = DefaultAlphaGrid();
  double alpha_star = 0.05;
  std::uint64_t seed = 0;
  // Fail when a configured test rejects at alpha_star more often than
  // alpha_star + 3 stderr.
  bool assert_valid = false;
  // Series name -> minimum rejection rate at alpha_star.
  std::map<std::string, double> assert_min_power;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws InvalidArgument on the first violated constraint.
void ValidateConfig(const ExperimentConfig& cfg);

struct Series {
  std::string name;
  Count k = 0;
  std::vector<double> pvalues;    // one per repetition
  std::vector<double> fractions;  // per alpha_grid entry
  std::vector<double> stderrs;
  double rate = 0.0;  // at alpha_star
  double rate_stderr = 0.0;
};

struct MkRow {
  Count k = 0;
  Count sample_m = 0;     // first repetition's profile
  double avg_m = 0.0;     // average over repetitions
  double expected_m = 0.0;  // under the uncorrupted theta
};

struct Assertion {
  std::string description;
  bool passed = true;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<Series> series;  // tests, then bonferroni, then u
  std::vector<MkRow> mk;
  std::vector<Assertion> assertions;

  bool AllAssertionsPassed() const;
  const Series* Find(std::string_view name, Count k) const;
};

// Fraction of p <= alpha per grid entry. Throws on empty input.
std::vector<double> RejectionCurve(std::span<const double> pvalues,
                                   std::span<const double> alpha_grid);

// Binomial standard error sqrt(f (1 - f) / reps).
double RejectionStderr(double fraction, Count reps);

// workers == 0 picks the hardware concurrency. The report does not depend
// on the worker count.
ExperimentReport RunExperiment(const ExperimentConfig& cfg, unsigned workers = 1);

// CSV tables; numbers use 17 significant digits.
std::string PValuesCsv(const ExperimentReport& report);  // rep,test,k,p
std::string CurvesCsv(const ExperimentReport& report);   // test,k,alpha,fraction,stderr
std::string MkCsv(const ExperimentReport& report);       // k,sample_m,avg_m,expected_m

struct CurveRow {
  std::string test;
  Count k = 0;
  double alpha = 0.0;
  double fraction = 0.0;
  double stderr_ = 0.0;
  friend bool operator==(const CurveRow&, const CurveRow&) = default;
};
std::vector<CurveRow> CurveRows(const ExperimentReport& report);
std::vector<CurveRow> ParseCurvesCsv(std::string_view csv);

// Writes pvalues.csv, curves.csv, mk.csv and report.json into `dir`
// (created if missing). Throws std::runtime_error on I/O failure.
void WriteReport(const ExperimentReport& report, const std::string& dir);

}  // namespace exiid

#endif  // EXIID_MC_HARNESS_HPP_
