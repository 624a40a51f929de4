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

// Count profiles: the sufficient statistic seen by every invariant test.
//
// A profile stores the sample size n, the sparse second-order count
// multiplicities m_k = #{x : n_x = k} for k >= 1 and, optionally, the
// first-order counts n_x keyed by a dense integer label. m_0 is never
// represented: for an unbounded item space it is infinite.

#ifndef EXIID_COUNT_PROFILE_HPP_
#define EXIID_COUNT_PROFILE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace exiid {

using Count = std::uint64_t;
using Label = std::uint64_t;

// Sparse k -> m_k map; absent keys mean zero.
using Multiplicities = std::map<Count, Count>;
// Sparse label -> n_x map.
using FirstOrderCounts = std::map<Label, Count>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CountProfile {
 public:
  CountProfile() = default;

  // Builds a profile from raw parts without checking the invariants; use
  // ValidateProfile() on anything that did not come from a factory below.
  CountProfile(Count n, Multiplicities m,
               std::optional<FirstOrderCounts> first_order = std::nullopt);

  // Derives n and m_k from first-order counts (all counts must be >= 1).
  static CountProfile FromFirstOrder(FirstOrderCounts counts);

  Count n() const { return n_; }
  const Multiplicities& multiplicities() const { return m_; }
  const std::optional<FirstOrderCounts>& first_order() const {
    return first_order_;
  }

  // m_k, zero when absent. m(0) is always 0 here.
  Count m(Count k) const;

  // Number of distinct observed items, sum of all m_k.
  Count m_plus() const;

  // Largest k with m_k > 0, or 0 for an empty profile.
  Count max_k() const;

  // Equality of the sufficient statistic: n and multiplicities only.
  bool SameMultiplicities(const CountProfile& other) const {
    return n_ == other.n_ && m_ == other.m_;
  }

  friend bool operator==(const CountProfile&, const CountProfile&) = default;

 private:
  Count n_ = 0;
  Multiplicities m_;
  std::optional<FirstOrderCounts> first_order_;
};

enum class LabelMode {
  // Exact byte-string keys; the default.
  kExact,
  // 128-bit FNV-1a digests instead of stored keys. Uses O(distinct) fixed
  // size memory but two different items may (with tiny probability) merge,
  // which silently corrupts the statistic.
  kHash128,
};

// Incremental label assignment for a stream of byte-string items. Each
// distinct item receives the next dense label 1, 2, ... in order of first
// appearance.
class ItemCounter {
 public:
  explicit ItemCounter(LabelMode mode = LabelMode::kExact) : mode_(mode) {}

  void Add(std::string_view item);
  Count size() const { return n_; }
  LabelMode mode() const { return mode_; }
  CountProfile Finish() const;

 private:
  struct Digest {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    friend bool operator==(const Digest&, const Digest&) = default;
  };
  struct DigestHash {
    std::size_t operator()(const Digest& d) const noexcept {
      return static_cast<std::size_t>(d.lo ^ (d.hi * 0x9e3779b97f4a7c15ULL));
    }
  };
  static Digest Fnv1a128(std::string_view item);
  Label Intern(std::string_view item);

  LabelMode mode_;
  std::unordered_map<std::string, Label> labels_;
  std::unordered_map<Digest, Label, DigestHash> digests_;
  std::vector<Count> counts_;
  Count n_ = 0;
};

CountProfile IngestItems(std::span<const std::string> items);
CountProfile IngestItems(std::span<const std::string_view> items);

// Profile from first-order counts only; labels become 1..d''.
// Throws InvalidArgument on a zero count.
CountProfile ProfileFromCounts(std::span<const Count> counts);
CountProfile ProfileFromCounts(std::span<const std::int64_t> counts);

// Returns the first violated invariant, or nullopt when the profile is
// consistent.
std::optional<std::string> ValidateProfile(const CountProfile& p);

}  // namespace exiid

#endif  // EXIID_COUNT_PROFILE_HPP_
