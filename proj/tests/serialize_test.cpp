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

#include "exiid/serialize.hpp"

#include <gtest/gtest.h>

#include <string>

#include "json.hpp"

namespace exiid {
namespace {

using Json = nlohmann::json;

TEST(ProfileJsonTest, Format) {
  const auto p = CountProfile::FromFirstOrder({{1, 2}, {2, 1}});
  EXPECT_EQ(ProfileToJson(p, false), R"({"n":3,"m":{"1":1,"2":1}})");
  EXPECT_EQ(ProfileToJson(p, true), R"({"n":3,"m":{"1":1,"2":1},"counts":{"1":2,"2":1}})");
  EXPECT_EQ(ProfileToJson(CountProfile()), R"({"n":0,"m":{}})");
  // Numeric, not lexicographic, key order.
  const CountProfile q(2 + 10, {{2, 1}, {10, 1}});
  EXPECT_EQ(ProfileToJson(q), R"({"n":12,"m":{"2":1,"10":1}})");
}

TEST(ProfileJsonTest, RoundTrip) {
  const auto p = CountProfile::FromFirstOrder({{1, 5}, {7, 1}, {9, 5}, {1000000, 2}});
  EXPECT_EQ(ProfileFromJson(ProfileToJson(p, true)), p);
  const auto without = ProfileFromJson(ProfileToJson(p, false));
  EXPECT_TRUE(without.SameMultiplicities(p));
  EXPECT_FALSE(without.first_order().has_value());
}

TEST(ProfileJsonTest, RejectsMalformedAndInvalid) {
  EXPECT_THROW(ProfileFromJson("{"), InvalidArgument);
  EXPECT_THROW(ProfileFromJson("[]"), InvalidArgument);
  EXPECT_THROW(ProfileFromJson(R"({"m":{}})"), InvalidArgument);
  EXPECT_THROW(ProfileFromJson(R"({"n":1})"), InvalidArgument);
  EXPECT_THROW(ProfileFromJson(R"({"n":-1,"m":{}})"), InvalidArgument);
  EXPECT_THROW(ProfileFromJson(R"({"n":2,"m":{"x":1}})"), InvalidArgument);
  EXPECT_THROW(ProfileFromJson(R"({"n":2,"m":{"2":1.5}})"), InvalidArgument);
  EXPECT_THROW(ProfileFromJson(R"({"n":2,"m":{"2":1},"extra":0})"), InvalidArgument);
  try {
    ProfileFromJson(R"({"n":5,"m":{"2":2}})");
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("Σ k·m_k = 4 ≠ n = 5"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ProfileFromJson(R"({"n":4,"m":{"2":2},"counts":{"1":2,"2":1}})"), InvalidArgument);
}

TEST(ResultsJsonTest, Fields) {
  const CountProfile doubled(1000, {{2, 500}});
  const auto results = RunSuite(DefaultSuite(), doubled);
  const Json j = Json::parse(ResultsToJson(results));
  ASSERT_EQ(j.size(), 6u);
  EXPECT_EQ(j[0]["kind"], "even");
  EXPECT_TRUE(j[0]["k"].is_null());
  EXPECT_EQ(j[2]["kind"], "count");
  EXPECT_EQ(j[2]["k"], 2);
  EXPECT_EQ(j[2]["statistic"], 500.0);
  for (const char* f : {"statistic", "tau_ub", "v_ub", "z", "log_p", "p", "applicable", "notes"}) {
    EXPECT_TRUE(j[2].contains(f)) << f;
  }
  // logcurv is inapplicable here; its non-finite fields become null.
  EXPECT_EQ(j[5]["applicable"], false);
  EXPECT_TRUE(j[5]["statistic"].is_null());
  EXPECT_EQ(j[5]["p"], 1.0);
}

TEST(DecideSuiteTest, BonferroniAndRaw) {
  const CountProfile doubled(1000, {{2, 500}});
  const auto results = RunSuite(DefaultSuite(), doubled);
  const auto d = DecideSuite(results, {}, 0.05, true);
  EXPECT_TRUE(d.reject);
  const Json j = Json::parse(d.json);
  EXPECT_EQ(j["correction"], "bonferroni");
  EXPECT_EQ(j["combined"]["reject"], true);
  EXPECT_EQ(j["results"].size(), 6u);
  const CountProfile unique(100, {{1, 100}});
  const auto u = RunSuite(DefaultSuite(), unique);
  EXPECT_FALSE(DecideSuite(u, {}, 0.05, true).reject);
  EXPECT_FALSE(DecideSuite(u, {}, 0.05, false).reject);
  EXPECT_THROW(DecideSuite(u, {}, 0.0, true), InvalidArgument);
}

TEST(ConfigJsonTest, ParsesStringsAndObjects) {
  const auto cfg = ConfigFromJson(R"({
    "generator": {"kind": "linear", "d": 100, "n": 300},
    "tests": ["even", {"test": "count:2", "name": "m2", "mode": "multinomial",
                        "cn": true, "variance": "theoretical", "pvalue": "bernstein"}],
    "reps": 77, "alpha_grid": [0.01, 0.05], "alpha_star": 0.01, "seed": 9,
    "assert_valid": true, "assert_min_power": {"m2:2": 0.0}
  })");
  EXPECT_EQ(cfg.generator.kind, GeneratorKind::kLinear);
  EXPECT_EQ(cfg.generator.n, 300u);
  ASSERT_EQ(cfg.tests.size(), 2u);
  EXPECT_EQ(cfg.tests[0].Name(), "even");
  EXPECT_EQ(cfg.tests[1].Name(), "m2");
  EXPECT_EQ(cfg.tests[1].options.mode, BoundMode::kMultinomial);
  EXPECT_TRUE(cfg.tests[1].options.cn_correction);
  EXPECT_EQ(cfg.tests[1].options.pvalue, PValueMethod::kBernstein);
  EXPECT_EQ(cfg.reps, 77u);
  EXPECT_EQ(cfg.alpha_grid, (std::vector<double>{0.01, 0.05}));
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_TRUE(cfg.assert_valid);
  EXPECT_EQ(ConfigFromJson(ConfigToJson(cfg)), cfg);
}

TEST(ConfigJsonTest, DefaultsAndErrors) {
  const auto cfg = ConfigFromJson(R"({"generator": {"kind": "uniform", "d": 30, "n": 90}})");
  ASSERT_EQ(cfg.tests.size(), 6u);
  EXPECT_EQ(cfg.reps, 2000u);
  EXPECT_EQ(cfg.alpha_star, 0.05);
  EXPECT_THROW(ConfigFromJson(R"({"generator": {"kind": "uniform"}, "bogus": 1})"), InvalidArgument);
  EXPECT_THROW(ConfigFromJson(R"({"tests": ["even"]})"), InvalidArgument);
  EXPECT_THROW(ConfigFromJson(R"({"generator": {"kind": "uniform", "seed": 3}})"), InvalidArgument);
  EXPECT_THROW(ConfigFromJson(R"({"generator": {"kind": "dice"}})"), InvalidArgument);
  EXPECT_THROW(ConfigFromJson(R"({"generator": {"kind": "uniform"}, "tests": ["curv:1"]})"),
               InvalidArgument);
  EXPECT_THROW(ConfigFromJson(R"({"generator": {"kind": "uniform"}, "reps": 0})"), InvalidArgument);
}

TEST(GeneratorJsonTest, RoundTrip) {
  GeneratorSpec s;
  s.kind = GeneratorKind::kCards;
  s.decks = 2;
  s.n = 65;
  s.seed = 1ull << 63;
  EXPECT_EQ(GeneratorSpecFromJson(GeneratorSpecToJson(s)), s);
  EXPECT_THROW(GeneratorSpecFromJson(R"({"kind":"cards","decks":1,"n":53})"), InvalidArgument);
}

TEST(ReportJsonTest, MirrorsCsvContent) {
  auto cfg = ConfigFromJson(R"({"generator": {"kind": "uniform", "d": 20, "n": 60},
                               "tests": ["even", "count:2"], "reps": 20})");
  const auto report = RunExperiment(cfg);
  const Json j = Json::parse(ReportToJson(report));
  ASSERT_EQ(j["series"].size(), 4u);
  EXPECT_EQ(j["series"][2]["test"], "bonferroni");
  EXPECT_EQ(j["series"][3]["test"], "u");
  EXPECT_EQ(j["series"][1]["k"], 2);
  EXPECT_EQ(j["series"][1]["pvalues"].size(), 20u);
  EXPECT_EQ(j["series"][1]["fraction"].get<std::vector<double>>(), report.series[1].fractions);
  EXPECT_EQ(j["mk"].size(), report.mk.size());
  EXPECT_EQ(j["all_passed"], true);
  EXPECT_EQ(ConfigFromJson(j["config"].dump()), cfg);
}

}  // namespace
}  // namespace exiid
