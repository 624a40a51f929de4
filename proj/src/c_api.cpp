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

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>

#include "exiid/count_profile.hpp"
#include "exiid/generators.hpp"
#include "exiid/iid_tests.hpp"
#include "exiid/mc_harness.hpp"
#include "exiid/serialize.hpp"
#include "exiid/verify.hpp"
#include "json.hpp"

struct exiid_counter {
  exiid::ItemCounter impl;
};
struct exiid_profile {
  exiid::CountProfile impl;
};
struct exiid_report {
  exiid::ExperimentReport impl;
};

namespace {

thread_local std::string g_last_error;

exiid_status Fail(exiid_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
exiid_status Guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return EXIID_OK;
  } catch (const exiid::InvalidArgument& e) {
    return Fail(EXIID_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(EXIID_OUT_OF_MEMORY, "out of memory");
  } catch (const std::system_error& e) {
    return Fail(EXIID_IO_ERROR, e.what());
  } catch (const std::runtime_error& e) {
    return Fail(EXIID_IO_ERROR, e.what());
  } catch (const std::exception& e) {
    return Fail(EXIID_INTERNAL, e.what());
  } catch (...) {
    return Fail(EXIID_INTERNAL, "unknown error");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw exiid::InvalidArgument(what);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

exiid::BoundMode ToMode(int mode) {
  switch (mode) {
    case EXIID_MODE_POISSON: return exiid::BoundMode::kPoisson;
    case EXIID_MODE_MULTINOMIAL: return exiid::BoundMode::kMultinomial;
  }
  throw exiid::InvalidArgument("unknown mode " + std::to_string(mode));
}

exiid::TestOptions ToOptions(const exiid_test_options* opts) {
  exiid::TestOptions out;
  if (opts == nullptr) return out;
  out.mode = ToMode(opts->mode);
  out.cn_correction = opts->cn_correction != 0;
  switch (opts->variance) {
    case EXIID_VARIANCE_AUTO: out.variance = exiid::VarianceSource::kAuto; break;
    case EXIID_VARIANCE_EMPIRICAL: out.variance = exiid::VarianceSource::kEmpirical; break;
    case EXIID_VARIANCE_THEORETICAL: out.variance = exiid::VarianceSource::kTheoretical; break;
    default: throw exiid::InvalidArgument("unknown variance source " + std::to_string(opts->variance));
  }
  switch (opts->pvalue) {
    case EXIID_PVALUE_GAUSSIAN: out.pvalue = exiid::PValueMethod::kGaussian; break;
    case EXIID_PVALUE_BERNSTEIN: out.pvalue = exiid::PValueMethod::kBernstein; break;
    default: throw exiid::InvalidArgument("unknown p-value method " + std::to_string(opts->pvalue));
  }
  return out;
}

std::vector<exiid::TestKind> TestsOrDefault(const char* tests) {
  if (tests == nullptr || *tests == '\0') return exiid::DefaultSuite();
  return exiid::ParseTestList(tests);
}

}  // namespace

extern "C" {

const char* exiid_version(void) { return "0.1.0"; }

const char* exiid_last_error(void) { return g_last_error.c_str(); }

void exiid_string_free(char* s) { std::free(s); }

void exiid_test_options_default(exiid_test_options* opts) {
  if (opts == nullptr) return;
  opts->mode = EXIID_MODE_POISSON;
  opts->cn_correction = 0;
  opts->variance = EXIID_VARIANCE_AUTO;
  opts->pvalue = EXIID_PVALUE_GAUSSIAN;
}

exiid_status exiid_counter_new(int hash128, exiid_counter** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    *out = new exiid_counter{exiid::ItemCounter(hash128 ? exiid::LabelMode::kHash128
                                                        : exiid::LabelMode::kExact)};
  });
}

exiid_status exiid_counter_add(exiid_counter* c, const char* data, size_t len) {
  return Guard([&] {
    Require(c != nullptr, "counter is NULL");
    Require(data != nullptr || len == 0, "data is NULL");
    c->impl.Add(std::string_view(data == nullptr ? "" : data, len));
  });
}

exiid_status exiid_counter_finish(const exiid_counter* c, exiid_profile** out) {
  return Guard([&] {
    Require(c != nullptr && out != nullptr, "NULL argument");
    *out = new exiid_profile{c->impl.Finish()};
  });
}

void exiid_counter_free(exiid_counter* c) { delete c; }

exiid_status exiid_profile_from_counts(const uint64_t* counts, size_t len, exiid_profile** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Require(counts != nullptr || len == 0, "counts is NULL");
    std::vector<exiid::Count> v(counts, counts + len);
    *out = new exiid_profile{exiid::ProfileFromCounts(std::span<const exiid::Count>(v))};
  });
}

exiid_status exiid_profile_from_json(const char* json, exiid_profile** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "NULL argument");
    *out = new exiid_profile{exiid::ProfileFromJson(json)};
  });
}

exiid_status exiid_profile_to_json(const exiid_profile* p, int include_counts, char** out) {
  return Guard([&] {
    Require(p != nullptr && out != nullptr, "NULL argument");
    *out = Dup(exiid::ProfileToJson(p->impl, include_counts != 0));
  });
}

exiid_status exiid_profile_n(const exiid_profile* p, uint64_t* out) {
  return Guard([&] {
    Require(p != nullptr && out != nullptr, "NULL argument");
    *out = p->impl.n();
  });
}

exiid_status exiid_profile_m(const exiid_profile* p, uint64_t k, uint64_t* out) {
  return Guard([&] {
    Require(p != nullptr && out != nullptr, "NULL argument");
    *out = p->impl.m(k);
  });
}

void exiid_profile_free(exiid_profile* p) { delete p; }

exiid_status exiid_run_tests(const exiid_profile* p, const char* tests,
                             const exiid_test_options* opts, double alpha, int bonferroni,
                             char** out_json, int* reject) {
  return Guard([&] {
    Require(p != nullptr && out_json != nullptr, "NULL argument");
    const auto kinds = TestsOrDefault(tests);
    const auto options = ToOptions(opts);
    const auto results = exiid::RunSuite(kinds, p->impl, options);
    auto decision = exiid::DecideSuite(results, options, alpha, bonferroni != 0);
    *out_json = Dup(decision.json);
    if (reject != nullptr) *reject = decision.reject ? 1 : 0;
  });
}

exiid_status exiid_bound_mean(const char* test, uint64_t n, int mode, double* out) {
  return Guard([&] {
    Require(test != nullptr && out != nullptr, "NULL argument");
    *out = exiid::BoundMean(exiid::ParseTestKind(test), n, ToMode(mode));
  });
}

exiid_status exiid_bounds_table(const char* tests, uint64_t n, int mode, char** out_json) {
  return Guard([&] {
    Require(out_json != nullptr, "NULL argument");
    const auto m = ToMode(mode);
    const double nd = static_cast<double>(n);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& kind : TestsOrDefault(tests)) {
      const double tau = exiid::BoundMean(kind, n, m);
      nlohmann::json row;
      row["test"] = kind.Label();
      row["n"] = n;
      row["mode"] = exiid::ModeName(m);
      row["tau_ub"] = tau;
      // logcurv is already on the per-item scale.
      row["tau_bar"] = kind.family == exiid::TestFamily::kLogCurvature ? tau : tau / nd;
      auto mu = [&](exiid::Count k) { return exiid::CountMeanBound(k, n, m) / nd; };
      const exiid::Count k = kind.k;
      switch (kind.family) {
        case exiid::TestFamily::kCount: row["v_bar_theoretical"] = mu(k); break;
        case exiid::TestFamily::kSlopeUpper:
        case exiid::TestFamily::kSlopeLower: row["v_bar_theoretical"] = mu(k) + mu(k - 1); break;
        case exiid::TestFamily::kCurvature:
          row["v_bar_theoretical"] = 4.0 * mu(k) + mu(k - 1) + mu(k + 1);
          break;
        default: row["v_bar_theoretical"] = nullptr; break;
      }
      rows.push_back(std::move(row));
    }
    *out_json = Dup(rows.dump(2));
  });
}

exiid_status exiid_sample(const char* spec_json, exiid_profile** out) {
  return Guard([&] {
    Require(spec_json != nullptr && out != nullptr, "NULL argument");
    *out = new exiid_profile{exiid::Sample(exiid::GeneratorSpecFromJson(spec_json))};
  });
}

exiid_status exiid_experiment_run(const char* config_json, unsigned workers, exiid_report** out) {
  return Guard([&] {
    Require(config_json != nullptr && out != nullptr, "NULL argument");
    *out = new exiid_report{exiid::RunExperiment(exiid::ConfigFromJson(config_json), workers)};
  });
}

exiid_status exiid_report_to_json(const exiid_report* r, char** out) {
  return Guard([&] {
    Require(r != nullptr && out != nullptr, "NULL argument");
    *out = Dup(exiid::ReportToJson(r->impl));
  });
}

exiid_status exiid_report_csv(const exiid_report* r, const char* table, char** out) {
  return Guard([&] {
    Require(r != nullptr && table != nullptr && out != nullptr, "NULL argument");
    const std::string_view t(table);
    if (t == "pvalues") {
      *out = Dup(exiid::PValuesCsv(r->impl));
    } else if (t == "curves") {
      *out = Dup(exiid::CurvesCsv(r->impl));
    } else if (t == "mk") {
      *out = Dup(exiid::MkCsv(r->impl));
    } else {
      throw exiid::InvalidArgument("unknown table '" + std::string(t) + "'");
    }
  });
}

exiid_status exiid_report_write(const exiid_report* r, const char* dir) {
  return Guard([&] {
    Require(r != nullptr && dir != nullptr, "NULL argument");
    exiid::WriteReport(r->impl, dir);
  });
}

exiid_status exiid_report_summary(const exiid_report* r, char** out_json) {
  return Guard([&] {
    Require(r != nullptr && out_json != nullptr, "NULL argument");
    nlohmann::json j;
    j["reps"] = r->impl.config.reps;
    j["alpha_star"] = r->impl.config.alpha_star;
    j["series"] = nlohmann::json::array();
    for (const auto& s : r->impl.series) {
      j["series"].push_back(
          {{"test", s.name}, {"k", s.k}, {"rate", s.rate}, {"stderr", s.rate_stderr}});
    }
    j["assertions"] = nlohmann::json::array();
    for (const auto& a : r->impl.assertions) {
      j["assertions"].push_back({{"description", a.description}, {"passed", a.passed}});
    }
    j["all_passed"] = r->impl.AllAssertionsPassed();
    *out_json = Dup(j.dump(2));
  });
}

exiid_status exiid_report_passed(const exiid_report* r, int* out) {
  return Guard([&] {
    Require(r != nullptr && out != nullptr, "NULL argument");
    *out = r->impl.AllAssertionsPassed() ? 1 : 0;
  });
}

void exiid_report_free(exiid_report* r) { delete r; }

exiid_status exiid_verify(const char* suite, char** out_json, int* passed) {
  return Guard([&] {
    Require(out_json != nullptr, "NULL argument");
    const auto report = exiid::RunVerification(suite == nullptr ? "all" : suite);
    *out_json = Dup(report.ToJson());
    if (passed != nullptr) *passed = report.passed() ? 1 : 0;
  });
}

}  // extern "C"
