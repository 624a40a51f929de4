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

#include "exiid/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>

#include "exiid/count_profile.hpp"
#include "exiid/generators.hpp"
#include "exiid/iid_tests.hpp"
#include "exiid/numerics.hpp"
#include "json.hpp"

namespace exiid {
namespace {

std::string Fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

void Add(VerifyReport& r, const char* suite, std::string name, bool ok, std::string detail) {
  r.checks.push_back(VerifyCheck{suite, std::move(name), ok, std::move(detail)});
}

void StirlingSuite(VerifyReport& r) {
  constexpr Count kMax = 100000;
  Count failures = 0;
  Count first_failure = 0;
  double min_margin = INFINITY;
  for (Count k = 1; k <= kMax; ++k) {
    // -1/(12k) <= ln(1 - eps_k) <= -1/(12k+1), compared on the log scale
    // where the margins are still resolvable at k = 1e5.
    const double kd = static_cast<double>(k);
    const double log_factor = -StirlingError(k);
    const double lo = -1.0 / (12.0 * kd);
    const double hi = -1.0 / (12.0 * kd + 1.0);
    const bool ok = lo <= log_factor && log_factor <= hi;
    min_margin = std::min(min_margin, std::min(log_factor - lo, hi - log_factor) * 12.0 * kd);
    if (!ok && failures++ == 0) first_failure = k;
  }
  Add(r, "stirling", "bracket k=1..100000", failures == 0,
      failures == 0 ? Fmt("smallest relative margin %.3g", min_margin)
                    : "first failure at k=" + std::to_string(first_failure));

  const double k1 = ComputeStirlingFactor(1).one_minus_eps;
  const double k1_expected = std::sqrt(2.0 * std::numbers::pi) / std::numbers::e;
  Add(r, "stirling", "k=1 equals sqrt(2 pi)/e", std::abs(k1 - k1_expected) < 1e-14,
      Fmt("got %.17g want %.17g", k1, k1_expected));

  const double big = ComputeStirlingFactor(1000000).one_minus_eps;
  Add(r, "stirling", "k=1e6 within 1e-6 of 1", std::abs(big - 1.0) < 1e-6,
      Fmt("1 - value = %.3g", 1.0 - big));
}

void PmfSuite(VerifyReport& r) {
  double worst = 0.0;
  for (Count n : {1, 2, 5, 10, 100, 1000, 10000}) {
    for (double theta : {0.0, 0.001, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999, 1.0}) {
      double total = 0.0;
      for (Count k = 0; k <= n; ++k) total += LogBinomialPmf(k, n, theta).prob();
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  Add(r, "pmf", "binomial sums to 1 (n <= 1e4)", worst <= 1e-10, Fmt("max |sum - 1| = %.3g", worst));

  double worst_sum = 0.0;
  double worst_moment = 0.0;
  for (double lambda : {0.5, 3.0, 10.0, 50.0, 200.0}) {
    const auto top = static_cast<Count>(lambda + 40.0 * std::sqrt(lambda) + 50.0);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (Count k = 0; k <= top; ++k) {
      const double p = LogPoissonPmf(k, lambda).prob();
      const double kd = static_cast<double>(k);
      s0 += p;
      s1 += kd * p;
      s2 += kd * kd * p;
    }
    worst_sum = std::max(worst_sum, std::abs(s0 - 1.0));
    worst_moment = std::max({worst_moment, std::abs(s1 - lambda), std::abs(s2 - s1 * s1 - lambda)});
  }
  Add(r, "pmf", "Poisson sums to 1", worst_sum <= 1e-10, Fmt("max |sum - 1| = %.3g", worst_sum));
  Add(r, "pmf", "Poisson mean = variance = lambda", worst_moment <= 1e-8,
      Fmt("max deviation %.3g", worst_moment));

  bool mode_ok = true;
  for (Count k : {1, 2, 5, 10, 30}) {
    const double kd = static_cast<double>(k);
    double best = -INFINITY;
    int best_i = -1;
    for (int i = 1; i <= 3000; ++i) {
      const double v = LogPoissonPmf(k, kd * i / 1000.0).value;
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    mode_ok = mode_ok && best_i == 1000;
  }
  Add(r, "pmf", "Poisson pmf in lambda peaks at lambda = k", mode_ok, "k in {1,2,5,10,30}");

  const double central = LogBinomialPmf(500, 1000, 0.5).prob();
  const double approx = std::sqrt(2.0 / (std::numbers::pi * 1000.0));
  Add(r, "pmf", "central binomial n=1000 near sqrt(2/(pi n))",
      std::abs(central / approx - 1.0) <= 0.002, Fmt("%.10g vs %.10g", central, approx));
}

void RatioSuite(VerifyReport& r) {
  constexpr Count n = 1000000;
  double worst = 0.0;
  for (Count k = 0; k <= 30; ++k) {
    for (double theta : {1e-7, 3e-7, 1e-6, 3e-6, 1e-5, 2e-5, 3e-5}) {
      worst = std::max(worst, std::abs(std::expm1(LogRatioPoissonBinomial(k, n, theta))));
    }
  }
  Add(r, "ratio", "n=1e6, k<=30, theta<=3e-5: |ratio - 1| <= 0.01", worst <= 0.01,
      Fmt("max |ratio - 1| = %.4g", worst));
  const double small = std::abs(std::expm1(LogRatioPoissonBinomial(0, n, 1e-6)));
  Add(r, "ratio", "k=0, theta=1e-6: |ratio - 1| < 1e-5", small < 1e-5, Fmt("%.3g", small));
}

void BruteForceSuite(VerifyReport& r) {
  double worst_mk = 0.0;
  double worst_excess = -INFINITY;
  std::string worst_where;
  for (Count n = 2; n <= 8; ++n) {
    for (int t = 1; t <= 9; ++t) {
      const double theta = t / 10.0;
      // All 2^n sequences, grouped by the number c of ones.
      std::vector<double> mk(n + 1, 0.0);
      std::vector<std::pair<double, CountProfile>> outcomes;
      for (Count c = 0; c <= n; ++c) {
        double ways = 1.0;
        for (Count i = 0; i < c; ++i) ways = ways * static_cast<double>(n - i) / static_cast<double>(i + 1);
        const double prob = ways * std::pow(theta, static_cast<double>(c)) *
                            std::pow(1.0 - theta, static_cast<double>(n - c));
        std::vector<Count> counts;
        if (c > 0) counts.push_back(c);
        if (n - c > 0) counts.push_back(n - c);
        CountProfile p = ProfileFromCounts(std::span<const Count>(counts));
        for (const auto& [k, m] : p.multiplicities()) mk[k] += prob * static_cast<double>(m);
        outcomes.emplace_back(prob, std::move(p));
      }
      const auto expected = ExpectedMk({theta, 1.0 - theta}, n, n);
      for (Count k = 1; k <= n; ++k) worst_mk = std::max(worst_mk, std::abs(expected[k - 1] - mk[k]));

      std::vector<TestKind> kinds = {TestKind::Make(TestFamily::kEven),
                                     TestKind::Make(TestFamily::kOdd)};
      for (Count k = 1; k < n; ++k) {
        kinds.push_back(TestKind::Make(TestFamily::kCount, k));
        if (k >= 2) {
          kinds.push_back(TestKind::Make(TestFamily::kSlopeUpper, k));
          kinds.push_back(TestKind::Make(TestFamily::kSlopeLower, k));
          kinds.push_back(TestKind::Make(TestFamily::kCurvature, k));
        }
      }
      for (const auto& kind : kinds) {
        double mean = 0.0;
        for (const auto& [prob, p] : outcomes) {
          mean += prob * Statistic(kind, p, BoundMode::kMultinomial);
        }
        const double excess = mean - BoundMean(kind, n, BoundMode::kMultinomial);
        if (excess > worst_excess) {
          worst_excess = excess;
          worst_where = kind.Label() + " n=" + std::to_string(n) + Fmt(" theta=%.1f", theta);
        }
      }
    }
  }
  Add(r, "bruteforce", "E[M_k] matches enumeration to 1e-12", worst_mk <= 1e-12,
      Fmt("max abs error %.3g", worst_mk));
  Add(r, "bruteforce", "multinomial tau_ub >= enumerated E[T]", worst_excess <= 1e-12,
      Fmt("max E[T] - tau_ub = %.3g", worst_excess) + " at " + worst_where +
          "; logcurv needs three distinct items and is undefined for d = 2");
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::string VerifyReport::ToJson() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return j.dump(2);
}

std::vector<std::string_view> VerifySuiteNames() {
  return {"stirling", "pmf", "ratio", "bruteforce"};
}

VerifyReport RunVerification(std::string_view suite) {
  VerifyReport r;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "stirling") { StirlingSuite(r); known = true; }
  if (all || suite == "pmf") { PmfSuite(r); known = true; }
  if (all || suite == "ratio") { RatioSuite(r); known = true; }
  if (all || suite == "bruteforce") { BruteForceSuite(r); known = true; }
  if (!known) throw InvalidArgument("unknown verification suite '" + std::string(suite) + "'");
  return r;
}

}  // namespace exiid
