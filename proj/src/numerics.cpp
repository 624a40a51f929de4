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

#include "exiid/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "exiid/count_profile.hpp"

namespace exiid {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;
constexpr double kLn2Pi = 1.837877066409345483560659472811;

void RequireProbability(double theta, const char* what) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in [0,1], got " +
                          std::to_string(theta));
  }
}

// Asymptotic expansion of ln Phi(-y) for large y:
//   -y^2/2 - ln(y sqrt(2 pi)) + ln(1 - 1/y^2 + 3/y^4 - 15/y^6 + ...).
// Terms are summed until they stop shrinking or drop below double epsilon.
double LogNormalTailAsymptotic(double y) {
  const double inv_y2 = 1.0 / (y * y);
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 200; ++j) {
    const double next = -term * (2.0 * j - 1.0) * inv_y2;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return -0.5 * y * y - std::log(y) - kLnSqrt2Pi + std::log(sum);
}

}  // namespace

double LogProb::prob() const { return std::exp(value); }

double StirlingError(std::uint64_t k) {
  if (k == 0) throw InvalidArgument("StirlingError requires k >= 1");
  const double x = static_cast<double>(k);
  if (k <= 15) {
    return std::lgamma(x + 1.0) - (x + 0.5) * std::log(x) + x - kLnSqrt2Pi;
  }
  // Asymptotic series 1/12k - 1/360k^3 + 1/1260k^5 - 1/1680k^7 + 1/1188k^9.
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double x2 = x * x;
  if (k > 500) return (s0 - s1 / x2) / x;
  if (k > 80) return (s0 - (s1 - s2 / x2) / x2) / x;
  if (k > 35) return (s0 - (s1 - (s2 - s3 / x2) / x2) / x2) / x;
  return (s0 - (s1 - (s2 - (s3 - s4 / x2) / x2) / x2) / x2) / x;
}

double Bd0(double x, double m) {
  if (std::abs(x - m) < 0.1 * (x + m)) {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

LogProb LogBinomialPmf(std::uint64_t k, std::uint64_t n, double theta) {
  RequireProbability(theta, "theta");
  if (k > n) {
    throw InvalidArgument("binomial k=" + std::to_string(k) + " exceeds n=" +
                          std::to_string(n));
  }
  const double p = theta;
  const double q = 1.0 - theta;
  // Exact 0^0 = 1 conventions at the endpoints.
  if (p == 0.0) return {k == 0 ? 0.0 : -kInf};
  if (q == 0.0) return {k == n ? 0.0 : -kInf};
  const double nd = static_cast<double>(n);
  if (k == 0) {
    if (n == 0) return {0.0};
    return {p < 0.1 ? -Bd0(nd, nd * q) - nd * p : nd * std::log1p(-p)};
  }
  if (k == n) {
    return {q < 0.1 ? -Bd0(nd, nd * p) - nd * q : nd * std::log(p)};
  }
  const double kd = static_cast<double>(k);
  const double lc = StirlingError(n) - StirlingError(k) - StirlingError(n - k) -
                    Bd0(kd, nd * p) - Bd0(nd - kd, nd * q);
  const double lf = kLn2Pi + std::log(kd) + std::log1p(-kd / nd);
  return {lc - 0.5 * lf};
}

LogProb LogPoissonPmf(std::uint64_t k, double lambda) {
  if (!(lambda >= 0.0) || std::isinf(lambda)) {
    throw InvalidArgument("Poisson rate must be finite and >= 0, got " +
                          std::to_string(lambda));
  }
  if (lambda == 0.0) return {k == 0 ? 0.0 : -kInf};
  if (k == 0) return {-lambda};
  const double kd = static_cast<double>(k);
  return {-StirlingError(k) - Bd0(kd, lambda) - 0.5 * (kLn2Pi + std::log(kd))};
}

StirlingFactor ComputeStirlingFactor(std::uint64_t k) {
  if (k == 0) throw InvalidArgument("Stirling factor requires k >= 1");
  const double kd = static_cast<double>(k);
  StirlingFactor f;
  f.k = k;
  f.one_minus_eps = std::exp(-StirlingError(k));
  f.lower = std::exp(-1.0 / (12.0 * kd));
  f.upper = std::exp(-1.0 / (12.0 * kd + 1.0));
  return f;
}

double LogCn(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("c_n requires n >= 1");
  return 0.5 * (kLn2Pi + std::log(static_cast<double>(n))) + StirlingError(n);
}

double LogRatioPoissonBinomial(std::uint64_t k, std::uint64_t n, double theta) {
  if (k >= n) {
    throw InvalidArgument("log-ratio requires k < n (k=" + std::to_string(k) +
                          ", n=" + std::to_string(n) + ")");
  }
  if (!(theta > 0.0 && theta < 1.0)) {
    throw InvalidArgument("log-ratio requires theta in (0,1)");
  }
  return LogPoissonPmf(k, static_cast<double>(n) * theta).value -
         LogBinomialPmf(k, n, theta).value;
}

double NormalCdf(double y) { return 0.5 * std::erfc(-y / std::numbers::sqrt2); }

double LogNormalSf(double y) {
  if (std::isnan(y)) return y;
  if (y > 8.0) return LogNormalTailAsymptotic(y);
  if (y < 0.0) return std::log1p(-0.5 * std::erfc(-y / std::numbers::sqrt2));
  return std::log(0.5 * std::erfc(y / std::numbers::sqrt2));
}

double NormalQuantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidArgument("normal quantile requires q in (0,1), got " +
                          std::to_string(q));
  }
  // Wichura's AS 241 (PPND16) rational approximations.
  const double dq = q - 0.5;
  double x;
  if (std::abs(dq) <= 0.425) {
    const double r = 0.180625 - dq * dq;
    x = dq *
        (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
              67265.770927008700853) * r + 45921.953931549871457) * r +
            13731.693765509461125) * r + 1971.5909503065514427) * r +
          133.14166789178437745) * r + 3.387132872796366608) /
        (((((((r * 5226.495278852545925 + 28729.085735721942674) * r +
              39307.89580009271061) * r + 21213.794301586595867) * r +
            5394.1960214247511077) * r + 687.1870074920579083) * r +
          42.313330701600911252) * r + 1.0);
  } else {
    double r = std::sqrt(-std::log(dq < 0.0 ? q : 1.0 - q));
    if (r <= 5.0) {
      r -= 1.6;
      x = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
    } else {
      r -= 5.0;
      x = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
    }
    if (dq < 0.0) x = -x;
  }
  // One Halley step against erfc, on the tail closest to q.
  const double err = q < 0.5 ? NormalCdf(x) - q : (1.0 - q) - NormalCdf(-x);
  const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace exiid
