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

// Synthetic iid and exchangeable non-iid sources.
//
//   uniform  theta_x = 1/d
//   linear   theta_x = 2x / (d (d+1)),  x = 1..d
//   cards    n draws without replacement from `decks` shuffled 52-card decks
//
// Corruptions (uniform/linear only):
//   even_n     draw n/2 iid, then duplicate every item
//   even_m     draw n/2 iid over 1..d, add a copy relabelled to d+1..2d
//   no_empty   draw n-d iid, then add every label once
//   no_unique  draw n-2d iid, then add every label twice
//
// Samples are returned as profiles; item order is irrelevant to every test
// and is not materialized.

#ifndef EXIID_GENERATORS_HPP_
#define EXIID_GENERATORS_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "exiid/count_profile.hpp"

namespace exiid {

enum class GeneratorKind { kUniform, kLinear, kCards };
enum class Corruption { kNone, kEvenN, kEvenM, kNoEmpty, kNoUnique };

std::string_view GeneratorKindName(GeneratorKind kind);
GeneratorKind ParseGeneratorKind(std::string_view name);
std::string_view CorruptionName(Corruption c);
Corruption ParseCorruption(std::string_view name);

inline constexpr Count kCardsPerDeck = 52;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kUniform;
  Count d = 100;     // support size for uniform/linear
  Count decks = 1;   // cards only
  Count n = 1000;
  Corruption corruption = Corruption::kNone;
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

// Throws InvalidArgument on the first violated constraint.
void ValidateSpec(const GeneratorSpec& spec);

// Throws InvalidArgument for d == 0 or a kind without a parametric theta.
std::vector<double> MakeTheta(GeneratorKind kind, Count d);

// theta of the uncorrupted iid source behind `spec` (uniform over 52 faces
// for cards).
std::vector<double> UncorruptedTheta(const GeneratorSpec& spec);

// Deterministic in spec (including its seed). First-order counts are keyed
// by the source labels 1..d (1..2d for even_m, 1..52 for cards).
CountProfile Sample(const GeneratorSpec& spec);

// E[M_k] = sum_x f_k^n(theta_x) for k = 1..k_max (entry k-1).
std::vector<double> ExpectedMk(const std::vector<double>& theta, Count n, Count k_max);

}  // namespace exiid

#endif  // EXIID_GENERATORS_HPP_
