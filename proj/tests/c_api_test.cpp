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

#include "exiid/exiid.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

using Json = nlohmann::json;

// Takes ownership of a library string.
std::string Take(char* s) {
  std::string out = s ? s : "";
  exiid_string_free(s);
  return out;
}

TEST(CApiTest, Version) { EXPECT_STREQ(exiid_version(), "0.1.0"); }

TEST(CApiTest, CounterBuildsProfile) {
  exiid_counter* c = nullptr;
  ASSERT_EQ(exiid_counter_new(0, &c), EXIID_OK);
  for (const char* item : {"a", "b", "a"}) {
    ASSERT_EQ(exiid_counter_add(c, item, 1), EXIID_OK);
  }
  exiid_profile* p = nullptr;
  ASSERT_EQ(exiid_counter_finish(c, &p), EXIID_OK);
  exiid_counter_free(c);
  uint64_t n = 0, m1 = 0, m2 = 0, m3 = 7;
  EXPECT_EQ(exiid_profile_n(p, &n), EXIID_OK);
  EXPECT_EQ(exiid_profile_m(p, 1, &m1), EXIID_OK);
  EXPECT_EQ(exiid_profile_m(p, 2, &m2), EXIID_OK);
  EXPECT_EQ(exiid_profile_m(p, 3, &m3), EXIID_OK);
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(m1, 1u);
  EXPECT_EQ(m2, 1u);
  EXPECT_EQ(m3, 0u);
  char* json = nullptr;
  ASSERT_EQ(exiid_profile_to_json(p, 0, &json), EXIID_OK);
  EXPECT_EQ(Take(json), R"({"n":3,"m":{"1":1,"2":1}})");
  exiid_profile_free(p);
}

TEST(CApiTest, BinaryItemsAndHashMode) {
  exiid_counter* c = nullptr;
  ASSERT_EQ(exiid_counter_new(1, &c), EXIID_OK);
  const char a[] = {'x', '\0', 'y'};
  const char b[] = {'x', '\0', 'z'};
  exiid_counter_add(c, a, 3);
  exiid_counter_add(c, b, 3);
  exiid_counter_add(c, a, 3);
  exiid_counter_add(c, "", 0);
  exiid_profile* p = nullptr;
  ASSERT_EQ(exiid_counter_finish(c, &p), EXIID_OK);
  uint64_t m1 = 0, m2 = 0;
  exiid_profile_m(p, 1, &m1);
  exiid_profile_m(p, 2, &m2);
  EXPECT_EQ(m1, 2u);
  EXPECT_EQ(m2, 1u);
  exiid_profile_free(p);
  exiid_counter_free(c);
}

TEST(CApiTest, ErrorsSetLastError) {
  exiid_profile* p = nullptr;
  EXPECT_EQ(exiid_profile_from_json(R"({"n":5,"m":{"2":2}})", &p), EXIID_INVALID_ARGUMENT);
  EXPECT_EQ(p, nullptr);
  EXPECT_NE(std::string(exiid_last_error()).find("Σ k·m_k = 4 ≠ n = 5"), std::string::npos);
  EXPECT_EQ(exiid_profile_from_json(nullptr, &p), EXIID_INVALID_ARGUMENT);
  EXPECT_EQ(exiid_profile_from_json("{}", nullptr), EXIID_INVALID_ARGUMENT);
  const uint64_t bad[] = {1, 0, 2};
  EXPECT_EQ(exiid_profile_from_counts(bad, 3, &p), EXIID_INVALID_ARGUMENT);
  double tau = 0;
  EXPECT_EQ(exiid_bound_mean("curv:1", 10, EXIID_MODE_POISSON, &tau), EXIID_INVALID_ARGUMENT);
  EXPECT_EQ(exiid_bound_mean("count:2", 10, 7, &tau), EXIID_INVALID_ARGUMENT);
  exiid_profile_free(nullptr);
  exiid_report_free(nullptr);
  exiid_counter_free(nullptr);
}

TEST(CApiTest, RunTestsOnDoubledData) {
  std::vector<uint64_t> counts(500, 2);
  exiid_profile* p = nullptr;
  ASSERT_EQ(exiid_profile_from_counts(counts.data(), counts.size(), &p), EXIID_OK);
  exiid_test_options opts;
  exiid_test_options_default(&opts);
  EXPECT_EQ(opts.mode, EXIID_MODE_POISSON);
  EXPECT_EQ(opts.cn_correction, 0);
  char* json = nullptr;
  int reject = -1;
  ASSERT_EQ(exiid_run_tests(p, "even,odd", &opts, 0.05, 1, &json, &reject), EXIID_OK);
  EXPECT_EQ(reject, 1);
  const Json j = Json::parse(Take(json));
  ASSERT_EQ(j["results"].size(), 2u);
  EXPECT_LT(j["results"][0]["p"].get<double>(), 1e-20);
  EXPECT_NEAR(j["results"][0]["z"].get<double>(), std::sqrt(1000.0 / 8.0), 1e-9);
  opts.pvalue = EXIID_PVALUE_BERNSTEIN;
  EXPECT_EQ(exiid_run_tests(p, "even", &opts, 0.05, 1, &json, &reject), EXIID_INVALID_ARGUMENT);
  exiid_profile_free(p);
}

TEST(CApiTest, UniqueItemsAreNotRejected) {
  std::vector<uint64_t> counts(100, 1);
  exiid_profile* p = nullptr;
  ASSERT_EQ(exiid_profile_from_counts(counts.data(), counts.size(), &p), EXIID_OK);
  char* json = nullptr;
  int reject = -1;
  ASSERT_EQ(exiid_run_tests(p, nullptr, nullptr, 0.05, 1, &json, &reject), EXIID_OK);
  EXPECT_EQ(reject, 0);
  EXPECT_EQ(Json::parse(Take(json))["results"].size(), 6u);
  exiid_profile_free(p);
}

TEST(CApiTest, Bounds) {
  double tau = 0;
  ASSERT_EQ(exiid_bound_mean("count:2", 1000, EXIID_MODE_POISSON, &tau), EXIID_OK);
  EXPECT_NEAR(tau, 1000.0 * std::exp(-1.0) / 2.0, 1e-9);
  char* json = nullptr;
  ASSERT_EQ(exiid_bounds_table("even,curv:2", 1000, EXIID_MODE_POISSON, &json), EXIID_OK);
  const Json j = Json::parse(Take(json));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["tau_ub"], 500.0);
  EXPECT_TRUE(j[0]["v_bar_theoretical"].is_null());
  EXPECT_NEAR(j[1]["v_bar_theoretical"].get<double>(), 1.82598, 1e-5);
}

TEST(CApiTest, SampleIsSeeded) {
  const char* spec = R"({"kind":"linear","d":100,"n":500,"seed":4})";
  exiid_profile* a = nullptr;
  exiid_profile* b = nullptr;
  ASSERT_EQ(exiid_sample(spec, &a), EXIID_OK);
  ASSERT_EQ(exiid_sample(spec, &b), EXIID_OK);
  char* ja = nullptr;
  char* jb = nullptr;
  exiid_profile_to_json(a, 1, &ja);
  exiid_profile_to_json(b, 1, &jb);
  EXPECT_EQ(Take(ja), Take(jb));
  uint64_t n = 0;
  exiid_profile_n(a, &n);
  EXPECT_EQ(n, 500u);
  exiid_profile_free(a);
  exiid_profile_free(b);
  EXPECT_EQ(exiid_sample(R"({"kind":"cards","n":60})", &a), EXIID_INVALID_ARGUMENT);
}

TEST(CApiTest, ExperimentReport) {
  const char* cfg = R"({"generator":{"kind":"uniform","d":50,"n":100},
                        "tests":["even","count:2"],"reps":40,"seed":3,"assert_valid":true})";
  exiid_report* r = nullptr;
  ASSERT_EQ(exiid_experiment_run(cfg, 2, &r), EXIID_OK);
  int passed = 0;
  ASSERT_EQ(exiid_report_passed(r, &passed), EXIID_OK);
  EXPECT_EQ(passed, 1);
  char* csv = nullptr;
  ASSERT_EQ(exiid_report_csv(r, "curves", &csv), EXIID_OK);
  EXPECT_EQ(Take(csv).rfind("test,k,alpha,fraction,stderr\n", 0), 0u);
  ASSERT_EQ(exiid_report_csv(r, "pvalues", &csv), EXIID_OK);
  EXPECT_EQ(Take(csv).rfind("rep,test,k,p\n", 0), 0u);
  EXPECT_EQ(exiid_report_csv(r, "nope", &csv), EXIID_INVALID_ARGUMENT);
  char* summary = nullptr;
  ASSERT_EQ(exiid_report_summary(r, &summary), EXIID_OK);
  EXPECT_FALSE(Take(summary).empty());
  const auto dir = std::filesystem::temp_directory_path() / "exiid_c_api_test";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(exiid_report_write(r, dir.c_str()), EXIID_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "mk.csv"));
  std::filesystem::remove_all(dir);
  exiid_report_free(r);
  EXPECT_EQ(exiid_experiment_run("{\"reps\":", 1, &r), EXIID_INVALID_ARGUMENT);
}

TEST(CApiTest, Verify) {
  char* json = nullptr;
  int passed = 0;
  ASSERT_EQ(exiid_verify("stirling", &json, &passed), EXIID_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_EQ(Json::parse(Take(json))["passed"], true);
  EXPECT_EQ(exiid_verify("bogus", &json, &passed), EXIID_INVALID_ARGUMENT);
}

}  // namespace
