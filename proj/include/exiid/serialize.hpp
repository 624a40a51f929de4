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

// JSON documents.
//
// Profile:  {"n": 4, "m": {"1": 2, "2": 1}, "counts": {"1": 2, "2": 1, "3": 1}}
//           ("counts" optional; keys are decimal strings)
// Results:  [{"kind", "k", "statistic", "tau_ub", "v_ub", "z", "log_p", "p",
//             "applicable", "notes"}, ...]   (non-finite numbers become null)
// Config:   {"generator": {"kind", "d", "decks", "n", "corruption"},
//            "tests": ["even", "count:2", {"test": "count:2", "name": ...,
//                      "mode", "cn", "variance", "pvalue"}],
//            "reps", "alpha_grid", "alpha_star", "seed", "assert_valid",
//            "assert_min_power": {"even": 0.999}}
//
// Parsers reject unknown keys and throw InvalidArgument with a message that
// names the offending field.

#ifndef EXIID_SERIALIZE_HPP_
#define EXIID_SERIALIZE_HPP_

#include <span>
#include <string>
#include <string_view>

#include "exiid/count_profile.hpp"
#include "exiid/generators.hpp"
#include "exiid/iid_tests.hpp"
#include "exiid/mc_harness.hpp"

namespace exiid {

std::string ProfileToJson(const CountProfile& p, bool include_counts = true);
// Parses and validates; a profile violating an invariant is rejected.
CountProfile ProfileFromJson(std::string_view text);

std::string ResultsToJson(std::span<const TestResult> results);

// Results plus the reject-at-alpha decision: Bonferroni over the suite when
// `bonferroni`, otherwise any individual p <= alpha.
struct SuiteDecision {
  std::string json;
  bool reject = false;
};
SuiteDecision DecideSuite(std::span<const TestResult> results, const TestOptions& opts,
                          double alpha, bool bonferroni);

std::string GeneratorSpecToJson(const GeneratorSpec& spec);
GeneratorSpec GeneratorSpecFromJson(std::string_view text);

std::string ConfigToJson(const ExperimentConfig& cfg);
// Missing fields take ExperimentConfig defaults; missing "tests" means the
// default suite.
ExperimentConfig ConfigFromJson(std::string_view text);

std::string ReportToJson(const ExperimentReport& report);

}  // namespace exiid

#endif  // EXIID_SERIALIZE_HPP_
