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

// Built-in numerical self-checks.
//
//   stirling    1 - eps_k bracket for k = 1..1e5, k = 1 value, large-k limit
//   pmf         binomial/Poisson normalization and moments, Poisson mode
//               at lambda = k, central binomial term at n = 1000
//   ratio       Poisson/binomial ratio within 1% for n = 1e6, k <= 30,
//               theta <= 3e-5
//   bruteforce  d = 2, n = 2..8: E[M_k] and multinomial tau_ub against a
//               full enumeration of all 2^n sequences

#ifndef EXIID_VERIFY_HPP_
#define EXIID_VERIFY_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace exiid {

struct VerifyCheck {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
  std::string ToJson() const;
};

std::vector<std::string_view> VerifySuiteNames();

// `suite` is one of VerifySuiteNames() or "all"; throws InvalidArgument
// otherwise.
VerifyReport RunVerification(std::string_view suite);

}  // namespace exiid

#endif  // EXIID_VERIFY_HPP_
