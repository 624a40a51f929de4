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

#include <gtest/gtest.h>

#include "exiid/count_profile.hpp"
#include "json.hpp"

namespace exiid {
namespace {

TEST(VerifyTest, EverySuitePasses) {
  for (auto suite : VerifySuiteNames()) {
    const auto r = RunVerification(suite);
    EXPECT_FALSE(r.checks.empty()) << suite;
    for (const auto& c : r.checks) {
      EXPECT_EQ(c.suite, suite);
      EXPECT_TRUE(c.passed) << c.suite << ": " << c.name << " (" << c.detail << ")";
    }
  }
}

TEST(VerifyTest, AllRunsEverySuite) {
  const auto r = RunVerification("all");
  std::size_t total = 0;
  for (auto suite : VerifySuiteNames()) total += RunVerification(suite).checks.size();
  EXPECT_EQ(r.checks.size(), total);
  const auto j = nlohmann::json::parse(r.ToJson());
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["checks"].size(), total);
  EXPECT_THROW(RunVerification("nope"), InvalidArgument);
}

}  // namespace
}  // namespace exiid
