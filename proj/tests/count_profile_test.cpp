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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace exiid {
namespace {

std::vector<std::string> Items(std::initializer_list<const char*> xs) {
  return std::vector<std::string>(xs.begin(), xs.end());
}

TEST(IngestItemsTest, CountsDistinctItems) {
  const auto p = IngestItems(Items({"a", "b", "a", "c"}));
  EXPECT_EQ(p.n(), 4u);
  EXPECT_EQ(p.multiplicities(), (Multiplicities{{1, 2}, {2, 1}}));
  ASSERT_TRUE(p.first_order().has_value());
  // Labels follow first appearance: a=1, b=2, c=3.
  EXPECT_EQ(*p.first_order(), (FirstOrderCounts{{1, 2}, {2, 1}, {3, 1}}));
  EXPECT_EQ(p.m_plus(), 3u);
  EXPECT_EQ(p.max_k(), 2u);
  EXPECT_FALSE(ValidateProfile(p).has_value());
}

TEST(IngestItemsTest, EmptyStream) {
  const auto p = IngestItems(std::vector<std::string>{});
  EXPECT_EQ(p.n(), 0u);
  EXPECT_TRUE(p.multiplicities().empty());
  EXPECT_EQ(p.m_plus(), 0u);
  EXPECT_EQ(p.max_k(), 0u);
  EXPECT_FALSE(ValidateProfile(p).has_value());
}

TEST(IngestItemsTest, TwoHeavyLabels) {
  std::vector<std::string> items(500, "x");
  items.insert(items.end(), 500, "y");
  const auto p = IngestItems(items);
  EXPECT_EQ(p.n(), 1000u);
  EXPECT_EQ(p.multiplicities(), (Multiplicities{{500, 2}}));
}

TEST(IngestItemsTest, BytesAreTakenVerbatim) {
  const std::string with_nul("a\0b", 3);
  std::vector<std::string> items = {with_nul, "a", std::string("a\0c", 3), "a\r", with_nul};
  const auto p = IngestItems(items);
  EXPECT_EQ(p.multiplicities(), (Multiplicities{{1, 3}, {2, 1}}));
}

TEST(IngestItemsTest, PermutationAndRelabelingInvariance) {
  std::mt19937_64 rng(7);
  std::vector<std::string> items;
  for (int i = 0; i < 2000; ++i) items.push_back("item" + std::to_string(rng() % 300));
  const auto base = IngestItems(items);
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = items;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_TRUE(IngestItems(shuffled).SameMultiplicities(base));
    std::vector<std::string> renamed;
    for (const auto& s : shuffled) renamed.push_back("renamed/" + s + "/" + std::to_string(trial));
    EXPECT_TRUE(IngestItems(renamed).SameMultiplicities(base));
  }
}

TEST(IngestItemsTest, HashModeAgreesWithExactMode) {
  ItemCounter exact(LabelMode::kExact);
  ItemCounter hashed(LabelMode::kHash128);
  for (int i = 0; i < 5000; ++i) {
    const std::string item = std::to_string(i % 97) + ":" + std::to_string(i % 13);
    exact.Add(item);
    hashed.Add(item);
  }
  EXPECT_EQ(exact.size(), 5000u);
  EXPECT_EQ(hashed.mode(), LabelMode::kHash128);
  EXPECT_EQ(exact.Finish(), hashed.Finish());
}

TEST(ProfileFromCountsTest, Examples) {
  const std::vector<Count> a = {2, 2};
  EXPECT_EQ(ProfileFromCounts(std::span<const Count>(a)).multiplicities(),
            (Multiplicities{{2, 2}}));
  const std::vector<Count> b = {3, 1, 1, 1};
  const auto pb = ProfileFromCounts(std::span<const Count>(b));
  EXPECT_EQ(pb.n(), 6u);
  EXPECT_EQ(pb.multiplicities(), (Multiplicities{{1, 3}, {3, 1}}));
  EXPECT_EQ(*pb.first_order(), (FirstOrderCounts{{1, 3}, {2, 1}, {3, 1}, {4, 1}}));
  const std::vector<Count> c = {5};
  EXPECT_EQ(ProfileFromCounts(std::span<const Count>(c)).multiplicities(),
            (Multiplicities{{5, 1}}));
}

TEST(ProfileFromCountsTest, RejectsZeroAndNegative) {
  const std::vector<Count> zero = {1, 0};
  EXPECT_THROW(ProfileFromCounts(std::span<const Count>(zero)), InvalidArgument);
  const std::vector<std::int64_t> negative = {1, -2};
  EXPECT_THROW(ProfileFromCounts(std::span<const std::int64_t>(negative)), InvalidArgument);
  const std::vector<std::int64_t> fine = {4, 1};
  EXPECT_EQ(ProfileFromCounts(std::span<const std::int64_t>(fine)).n(), 5u);
}

TEST(ProfileFromCountsTest, RoundTripWithItemExpansion) {
  const std::vector<Count> counts = {7, 1, 3, 3, 1, 12};
  std::vector<std::string> items;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    for (Count i = 0; i < counts[x]; ++i) items.push_back("label" + std::to_string(x));
  }
  EXPECT_TRUE(
      ProfileFromCounts(std::span<const Count>(counts)).SameMultiplicities(IngestItems(items)));
}

TEST(ValidateProfileTest, Examples) {
  EXPECT_FALSE(ValidateProfile(CountProfile(4, {{2, 2}})).has_value());

  const auto bad_sum = ValidateProfile(CountProfile(5, {{2, 2}}));
  ASSERT_TRUE(bad_sum.has_value());
  EXPECT_EQ(*bad_sum, "Σ k·m_k = 4 ≠ n = 5");

  const auto bad_first = ValidateProfile(CountProfile(4, {{2, 2}}, FirstOrderCounts{{1, 2}, {2, 1}}));
  ASSERT_TRUE(bad_first.has_value());
  EXPECT_EQ(bad_first->rfind("first_order inconsistent", 0), 0u) << *bad_first;
}

TEST(ValidateProfileTest, RejectsStoredZeroAndM0) {
  EXPECT_TRUE(ValidateProfile(CountProfile(4, {{2, 2}, {3, 0}})).has_value());
  EXPECT_TRUE(ValidateProfile(CountProfile(4, {{0, 1}, {2, 2}})).has_value());
}

TEST(ValidateProfileTest, FirstOrderWithMatchingSumButWrongShape) {
  // n_x = {3, 1} sums to 4 but has multiplicities {1:1, 3:1}.
  const auto v = ValidateProfile(CountProfile(4, {{2, 2}}, FirstOrderCounts{{1, 3}, {2, 1}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->rfind("first_order inconsistent", 0), 0u) << *v;
}

TEST(CountProfileTest, FromFirstOrderRejectsZeroCount) {
  EXPECT_THROW(CountProfile::FromFirstOrder({{1, 0}}), InvalidArgument);
  const auto p = CountProfile::FromFirstOrder({{10, 2}, {20, 2}, {30, 1}});
  EXPECT_EQ(p.n(), 5u);
  EXPECT_EQ(p.m(2), 2u);
  EXPECT_EQ(p.m(1), 1u);
  EXPECT_EQ(p.m(0), 0u);
  EXPECT_EQ(p.m(99), 0u);
}

}  // namespace
}  // namespace exiid
