/* Copyright 2026 The exiid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libexiid.
 *
 * Every fallible call returns an exiid_status. On failure the message is
 * available from exiid_last_error() until the next call on the same thread.
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with exiid_string_free(). Handles are released with
 * their matching *_free function; passing NULL to any *_free is a no-op.
 */

#ifndef EXIID_EXIID_H_
#define EXIID_EXIID_H_

#include <stddef.h>
#include <stdint.h>

#if defined(EXIID_BUILDING_LIBRARY)
#define EXIID_API __attribute__((visibility("default")))
#else
#define EXIID_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum exiid_status {
  EXIID_OK = 0,
  EXIID_INVALID_ARGUMENT = 1, /* bad input value, option or document */
  EXIID_IO_ERROR = 2,
  EXIID_OUT_OF_MEMORY = 3,
  EXIID_INTERNAL = 4
} exiid_status;

typedef enum exiid_mode { EXIID_MODE_POISSON = 0, EXIID_MODE_MULTINOMIAL = 1 } exiid_mode;

typedef enum exiid_variance {
  EXIID_VARIANCE_AUTO = 0,
  EXIID_VARIANCE_EMPIRICAL = 1,
  EXIID_VARIANCE_THEORETICAL = 2
} exiid_variance;

typedef enum exiid_pvalue { EXIID_PVALUE_GAUSSIAN = 0, EXIID_PVALUE_BERNSTEIN = 1 } exiid_pvalue;

typedef struct exiid_test_options {
  int mode;          /* exiid_mode */
  int cn_correction; /* nonzero: multiply p by c_n (poisson mode only) */
  int variance;      /* exiid_variance */
  int pvalue;        /* exiid_pvalue */
} exiid_test_options;

typedef struct exiid_counter exiid_counter;
typedef struct exiid_profile exiid_profile;
typedef struct exiid_report exiid_report;

EXIID_API const char* exiid_version(void);
EXIID_API const char* exiid_last_error(void);
EXIID_API void exiid_string_free(char* s);

EXIID_API void exiid_test_options_default(exiid_test_options* opts);

/* Item ingestion. hash128 != 0 selects 128-bit digests instead of exact
 * keys (constant memory per item, tiny collision risk). */
EXIID_API exiid_status exiid_counter_new(int hash128, exiid_counter** out);
EXIID_API exiid_status exiid_counter_add(exiid_counter* c, const char* data, size_t len);
EXIID_API exiid_status exiid_counter_finish(const exiid_counter* c, exiid_profile** out);
EXIID_API void exiid_counter_free(exiid_counter* c);

/* Profiles. */
EXIID_API exiid_status exiid_profile_from_counts(const uint64_t* counts, size_t len,
                                                 exiid_profile** out);
EXIID_API exiid_status exiid_profile_from_json(const char* json, exiid_profile** out);
EXIID_API exiid_status exiid_profile_to_json(const exiid_profile* p, int include_counts,
                                             char** out);
EXIID_API exiid_status exiid_profile_n(const exiid_profile* p, uint64_t* out);
EXIID_API exiid_status exiid_profile_m(const exiid_profile* p, uint64_t k, uint64_t* out);
EXIID_API void exiid_profile_free(exiid_profile* p);

/* Runs `tests` (comma list such as "even,count:2"; NULL or "" for the
 * default suite) and writes the decision document. *reject receives 1 when
 * the suite rejects at alpha: Bonferroni-combined when bonferroni != 0,
 * otherwise when any single test has p <= alpha. */
EXIID_API exiid_status exiid_run_tests(const exiid_profile* p, const char* tests,
                                       const exiid_test_options* opts, double alpha,
                                       int bonferroni, char** out_json, int* reject);

/* tau_ub of one test ("count:2", ...) at sample size n. */
EXIID_API exiid_status exiid_bound_mean(const char* test, uint64_t n, int mode, double* out);

/* JSON table of tau_ub, tau_ub/n and, where defined, the theoretical
 * variance bound for each listed test. */
EXIID_API exiid_status exiid_bounds_table(const char* tests, uint64_t n, int mode, char** out_json);

/* Draws one sample from a generator document
 * {"kind", "d", "decks", "n", "corruption", "seed"}. */
EXIID_API exiid_status exiid_sample(const char* spec_json, exiid_profile** out);

/* Monte Carlo experiments; workers == 0 uses all hardware threads. */
EXIID_API exiid_status exiid_experiment_run(const char* config_json, unsigned workers,
                                            exiid_report** out);
EXIID_API exiid_status exiid_report_to_json(const exiid_report* r, char** out);
/* table: "pvalues", "curves" or "mk". */
EXIID_API exiid_status exiid_report_csv(const exiid_report* r, const char* table, char** out);
EXIID_API exiid_status exiid_report_write(const exiid_report* r, const char* dir);
/* Compact summary: rejection rate at alpha_star per series, assertions. */
EXIID_API exiid_status exiid_report_summary(const exiid_report* r, char** out_json);
EXIID_API exiid_status exiid_report_passed(const exiid_report* r, int* out);
EXIID_API void exiid_report_free(exiid_report* r);

/* Numerical self-checks: "stirling", "pmf", "ratio", "bruteforce" or
 * "all". *passed receives 1 when every check passed. */
EXIID_API exiid_status exiid_verify(const char* suite, char** out_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* EXIID_EXIID_H_ */
