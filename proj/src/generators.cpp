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

#include "exiid/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "exiid/numerics.hpp"
#include "exiid/rng.hpp"

namespace exiid {
namespace {

// Integer weights w_x with theta_x = w_x / sum(w); exact inverse-CDF draws.
class CategoricalSampler {
 public:
  CategoricalSampler(GeneratorKind kind, Count d) : uniform_(kind == GeneratorKind::kUniform), d_(d) {
    if (!uniform_) {
      cumulative_.resize(d);
      Count total = 0;
      for (Count x = 1; x <= d; ++x) {
        total += x;
        cumulative_[x - 1] = total;
      }
    }
  }

  // Label in 1..d.
  Label Draw(CounterRng& rng) const {
    if (uniform_) return rng.NextBelow(d_) + 1;
    const Count r = rng.NextBelow(cumulative_.back());
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    return static_cast<Label>(it - cumulative_.begin()) + 1;
  }

 private:
  bool uniform_;
  Count d_;
  std::vector<Count> cumulative_;
};

std::string Str(Count v) { return std::to_string(v); }

}  // namespace

std::string_view GeneratorKindName(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUniform: return "uniform";
    case GeneratorKind::kLinear: return "linear";
    case GeneratorKind::kCards: return "cards";
  }
  return "?";
}

GeneratorKind ParseGeneratorKind(std::string_view name) {
  for (auto k : {GeneratorKind::kUniform, GeneratorKind::kLinear, GeneratorKind::kCards}) {
    if (GeneratorKindName(k) == name) return k;
  }
  throw InvalidArgument("unknown generator kind '" + std::string(name) + "'");
}

std::string_view CorruptionName(Corruption c) {
  switch (c) {
    case Corruption::kNone: return "none";
    case Corruption::kEvenN: return "even_n";
    case Corruption::kEvenM: return "even_m";
    case Corruption::kNoEmpty: return "no_empty";
    case Corruption::kNoUnique: return "no_unique";
  }
  return "?";
}

Corruption ParseCorruption(std::string_view name) {
  for (auto c : {Corruption::kNone, Corruption::kEvenN, Corruption::kEvenM, Corruption::kNoEmpty,
                 Corruption::kNoUnique}) {
    if (CorruptionName(c) == name) return c;
  }
  throw InvalidArgument("unknown corruption '" + std::string(name) + "'");
}

void ValidateSpec(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::kCards) {
    if (spec.decks < 1) throw InvalidArgument("cards needs decks >= 1");
    if (spec.decks > (Count{1} << 40)) throw InvalidArgument("too many decks");
    if (spec.n > kCardsPerDeck * spec.decks) {
      throw InvalidArgument("cards needs n <= 52*decks = " + Str(kCardsPerDeck * spec.decks) +
                            ", got n = " + Str(spec.n));
    }
    if (spec.corruption != Corruption::kNone) {
      throw InvalidArgument("cards does not support corruption");
    }
    return;
  }
  if (spec.d < 1) throw InvalidArgument("d must be >= 1");
  // Keeps the integer weight total d(d+1)/2 far from overflow.
  if (spec.d > (Count{1} << 30)) throw InvalidArgument("d too large");
  switch (spec.corruption) {
    case Corruption::kNone:
      break;
    case Corruption::kEvenN:
    case Corruption::kEvenM:
      if (spec.n % 2 != 0) {
        throw InvalidArgument(std::string(CorruptionName(spec.corruption)) +
                              " needs even n, got n = " + Str(spec.n));
      }
      break;
    case Corruption::kNoEmpty:
      if (spec.n < spec.d) {
        throw InvalidArgument("no_empty needs n >= d (n = " + Str(spec.n) + ", d = " +
                              Str(spec.d) + ")");
      }
      break;
    case Corruption::kNoUnique:
      if (spec.n < 2 * spec.d) {
        throw InvalidArgument("no_unique needs n >= 2d (n = " + Str(spec.n) + ", d = " +
                              Str(spec.d) + ")");
      }
      break;
  }
}

std::vector<double> MakeTheta(GeneratorKind kind, Count d) {
  if (d == 0) throw InvalidArgument("theta needs d >= 1");
  std::vector<double> theta(d);
  const double dd = static_cast<double>(d);
  switch (kind) {
    case GeneratorKind::kUniform:
      std::fill(theta.begin(), theta.end(), 1.0 / dd);
      break;
    case GeneratorKind::kLinear:
      for (Count x = 1; x <= d; ++x) {
        theta[x - 1] = 2.0 * static_cast<double>(x) / (dd * (dd + 1.0));
      }
      break;
    case GeneratorKind::kCards:
      throw InvalidArgument("cards has no parametric theta");
  }
  return theta;
}

std::vector<double> UncorruptedTheta(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::kCards) return MakeTheta(GeneratorKind::kUniform, kCardsPerDeck);
  return MakeTheta(spec.kind, spec.d);
}

CountProfile Sample(const GeneratorSpec& spec) {
  ValidateSpec(spec);
  CounterRng rng(spec.seed);

  if (spec.kind == GeneratorKind::kCards) {
    // Partial Fisher-Yates over the pile of face labels.
    const Count pile_size = kCardsPerDeck * spec.decks;
    std::vector<Label> pile(pile_size);
    for (Count i = 0; i < pile_size; ++i) pile[i] = i % kCardsPerDeck + 1;
    FirstOrderCounts counts;
    for (Count i = 0; i < spec.n; ++i) {
      const Count j = i + rng.NextBelow(pile_size - i);
      std::swap(pile[i], pile[j]);
      ++counts[pile[i]];
    }
    return CountProfile::FromFirstOrder(std::move(counts));
  }

  const CategoricalSampler sampler(spec.kind, spec.d);
  std::vector<Count> counts(spec.d, 0);
  auto draw = [&](Count how_many) {
    for (Count i = 0; i < how_many; ++i) ++counts[sampler.Draw(rng) - 1];
  };

  FirstOrderCounts first;
  switch (spec.corruption) {
    case Corruption::kNone:
      draw(spec.n);
      break;
    case Corruption::kEvenN:
      draw(spec.n / 2);
      for (auto& c : counts) c *= 2;
      break;
    case Corruption::kEvenM:
      draw(spec.n / 2);
      for (Count x = 0; x < spec.d; ++x) {
        if (counts[x] > 0) first[spec.d + x + 1] = counts[x];
      }
      break;
    case Corruption::kNoEmpty:
      draw(spec.n - spec.d);
      for (auto& c : counts) c += 1;
      break;
    case Corruption::kNoUnique:
      draw(spec.n - 2 * spec.d);
      for (auto& c : counts) c += 2;
      break;
  }
  for (Count x = 0; x < spec.d; ++x) {
    if (counts[x] > 0) first[x + 1] = counts[x];
  }
  return CountProfile::FromFirstOrder(std::move(first));
}

std::vector<double> ExpectedMk(const std::vector<double>& theta, Count n, Count k_max) {
  if (theta.empty()) throw InvalidArgument("theta is empty");
  double total = 0.0;
  for (double t : theta) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("theta entries must lie in [0,1]");
    total += t;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidArgument("theta must sum to 1, got " + std::to_string(total));
  }
  // Equal theta values share one pmf evaluation.
  std::vector<double> sorted = theta;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out(k_max, 0.0);
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double weight = static_cast<double>(j - i);
    for (Count k = 1; k <= std::min(k_max, n); ++k) {
      out[k - 1] += weight * LogBinomialPmf(k, n, sorted[i]).prob();
    }
    i = j;
  }
  return out;
}

}  // namespace exiid
