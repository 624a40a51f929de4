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

// Log-space special functions for binomial, Poisson and normal laws.
//
// The binomial and Poisson log-pmfs use Loader's saddle-point form
// (Stirling remainder plus the deviance term bd0) so they stay accurate
// to near machine precision for sample sizes up to ~1e9, where a plain
// lgamma difference loses most significant digits.

#ifndef EXIID_NUMERICS_HPP_
#define EXIID_NUMERICS_HPP_

#include <cstdint>

namespace exiid {

// Natural-log probability in [-inf, 0].
struct LogProb {
  double value = 0.0;
  double prob() const;
};

// 1 - eps_k := k^k e^{-k} sqrt(2 pi k) / k!, with the bracket
// e^{-1/12k} <= 1 - eps_k <= e^{-1/(12k+1)}.
struct StirlingFactor {
  std::uint64_t k = 0;
  double one_minus_eps = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool within_bracket() const {
    return lower <= one_minus_eps && one_minus_eps <= upper;
  }
};

// Stirling remainder ln k! - (k + 1/2) ln k + k - ln sqrt(2 pi); k >= 1.
double StirlingError(std::uint64_t k);

// Deviance term x ln(x/m) + m - x, evaluated without cancellation.
double Bd0(double x, double m);

LogProb LogBinomialPmf(std::uint64_t k, std::uint64_t n, double theta);
LogProb LogPoissonPmf(std::uint64_t k, double lambda);

StirlingFactor ComputeStirlingFactor(std::uint64_t k);

// ln c_n = -ln P_n(n) = ln n! - n ln n + n.
double LogCn(std::uint64_t n);

// ln[g_k(n theta) / f_k^n(theta)] for 0 <= k < n, theta in (0,1).
double LogRatioPoissonBinomial(std::uint64_t k, std::uint64_t n, double theta);

double NormalCdf(double y);
// ln(1 - Phi(y)); finite for every finite y.
double LogNormalSf(double y);
// Phi^{-1}(q) for q in (0,1).
double NormalQuantile(double q);

}  // namespace exiid

#endif  // EXIID_NUMERICS_HPP_
