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

#include "exiid/count_profile.hpp"

#include <sstream>
#include <utility>

namespace exiid {

CountProfile::CountProfile(Count n, Multiplicities m,
                           std::optional<FirstOrderCounts> first_order)
    : n_(n), m_(std::move(m)), first_order_(std::move(first_order)) {}

CountProfile CountProfile::FromFirstOrder(FirstOrderCounts counts) {
  Multiplicities m;
  Count n = 0;
  for (const auto& [label, c] : counts) {
    if (c == 0) {
      throw InvalidArgument("count for label " + std::to_string(label) +
                            " is zero; zero counts are not representable");
    }
    ++m[c];
    n += c;
  }
  return CountProfile(n, std::move(m), std::move(counts));
}

Count CountProfile::m(Count k) const {
  auto it = m_.find(k);
  return it == m_.end() ? 0 : it->second;
}

Count CountProfile::m_plus() const {
  Count total = 0;
  for (const auto& [k, mk] : m_) total += mk;
  return total;
}

Count CountProfile::max_k() const { return m_.empty() ? 0 : m_.rbegin()->first; }

ItemCounter::Digest ItemCounter::Fnv1a128(std::string_view item) {
  // FNV-1a, 128-bit variant.
  __extension__ typedef unsigned __int128 u128;
  const u128 prime = (static_cast<u128>(0x0000000001000000ULL) << 64) | 0x000000000000013BULL;
  u128 h = (static_cast<u128>(0x6c62272e07bb0142ULL) << 64) | 0x62b821756295c58dULL;
  for (unsigned char c : item) {
    h ^= c;
    h *= prime;
  }
  return Digest{static_cast<std::uint64_t>(h >> 64), static_cast<std::uint64_t>(h)};
}

Label ItemCounter::Intern(std::string_view item) {
  const auto next = static_cast<Label>(counts_.size() + 1);
  if (mode_ == LabelMode::kHash128) {
    auto [it, inserted] = digests_.try_emplace(Fnv1a128(item), next);
    if (inserted) counts_.push_back(0);
    return it->second;
  }
  auto [it, inserted] = labels_.try_emplace(std::string(item), next);
  if (inserted) counts_.push_back(0);
  return it->second;
}

void ItemCounter::Add(std::string_view item) {
  ++counts_[Intern(item) - 1];
  ++n_;
}

CountProfile ItemCounter::Finish() const {
  FirstOrderCounts fo;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    fo.emplace_hint(fo.end(), static_cast<Label>(i + 1), counts_[i]);
  }
  return CountProfile::FromFirstOrder(std::move(fo));
}

CountProfile IngestItems(std::span<const std::string> items) {
  ItemCounter counter;
  for (const auto& item : items) counter.Add(item);
  return counter.Finish();
}

CountProfile IngestItems(std::span<const std::string_view> items) {
  ItemCounter counter;
  for (auto item : items) counter.Add(item);
  return counter.Finish();
}

CountProfile ProfileFromCounts(std::span<const Count> counts) {
  FirstOrderCounts fo;
  Label label = 0;
  for (Count c : counts) fo.emplace_hint(fo.end(), ++label, c);
  return CountProfile::FromFirstOrder(std::move(fo));
}

CountProfile ProfileFromCounts(std::span<const std::int64_t> counts) {
  std::vector<Count> converted;
  converted.reserve(counts.size());
  for (auto c : counts) {
    if (c <= 0) {
      throw InvalidArgument("counts must be positive, got " + std::to_string(c));
    }
    converted.push_back(static_cast<Count>(c));
  }
  return ProfileFromCounts(std::span<const Count>(converted));
}

std::optional<std::string> ValidateProfile(const CountProfile& p) {
  Count weighted = 0;
  for (const auto& [k, mk] : p.multiplicities()) {
    if (k == 0) return "m_0 is not representable (key k=0 present)";
    if (mk == 0) return "m_" + std::to_string(k) + " stored as zero";
    Count term = 0;
    if (__builtin_mul_overflow(k, mk, &term) ||
        __builtin_add_overflow(weighted, term, &weighted)) {
      return "Σ k·m_k overflows";
    }
  }
  if (weighted != p.n()) {
    std::ostringstream os;
    os << "Σ k·m_k = " << weighted << " ≠ n = " << p.n();
    return os.str();
  }
  if (const auto& fo = p.first_order()) {
    Multiplicities derived;
    Count total = 0;
    for (const auto& [label, c] : *fo) {
      if (c == 0) {
        return "first_order inconsistent: label " + std::to_string(label) +
               " has zero count";
      }
      ++derived[c];
      if (__builtin_add_overflow(total, c, &total)) {
        return "first_order inconsistent: counts overflow";
      }
    }
    if (total != p.n()) {
      return "first_order inconsistent: Σ n_x = " + std::to_string(total) +
             " ≠ n = " + std::to_string(p.n());
    }
    if (derived != p.multiplicities()) {
      return "first_order inconsistent: multiplicities do not match counts";
    }
  }
  return std::nullopt;
}

}  // namespace exiid
