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

// Counter-based 64-bit generator. Output i of stream (seed, id) is a pure
// function of (seed, id, i), so any repetition can be regenerated without
// replaying the others.

#ifndef EXIID_RNG_HPP_
#define EXIID_RNG_HPP_

#include <cstdint>

namespace exiid {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(Mix64(seed ^ Mix64(stream + kGamma))) {}

  constexpr std::uint64_t NextU64() { return Mix64(key_ + kGamma * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double NextDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., bound - 1}; bound >= 1. Lemire's multiply-shift
  // with rejection, so there is no modulo bias.
  std::uint64_t NextBelow(std::uint64_t bound) {
    __extension__ typedef unsigned __int128 u128;
    u128 product = static_cast<u128>(NextU64()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<u128>(NextU64()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace exiid

#endif  // EXIID_RNG_HPP_
