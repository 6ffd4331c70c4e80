// Copyright 2026 The Flagshare Authors
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

#ifndef FLAGSHARE_FLAGSHARE_C_H
#define FLAGSHARE_FLAGSHARE_C_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define FS_API __attribute__((visibility("default")))
#else
#define FS_API
#endif

typedef enum fs_status {
    FS_OK = 0,
    /// Bad name, malformed option or out-of-range value.
    FS_ERR_INVALID_ARGUMENT = 1,
    /// The scheme does not certify under the requested procedure.
    FS_ERR_NOT_CERTIFIED = 2,
    /// The requested item does not exist for this scheme.
    FS_ERR_NOT_FOUND = 3,
    /// The computation ran but did not reach its goal (search budget).
    FS_ERR_FAILED = 4,
    FS_ERR_INTERNAL = 5
} fs_status;

typedef struct fs_scheme fs_scheme;
typedef struct fs_experiment fs_experiment;

/// Message of the last failing call on this thread, or "".
FS_API const char *fs_last_error(void);
FS_API const char *fs_status_name(fs_status s);
FS_API const char *fs_version(void);
/// Releases a string returned through a char** out-parameter.
FS_API void fs_string_free(char *s);

/// Catalog names separated by newlines.
FS_API fs_status fs_code_list(char **out);
/// JSON: name, n, k, d, generators, logical representatives.
FS_API fs_status fs_code_describe(const char *code, char **out_json);

/// kind: "flag" or "parallel".
FS_API fs_status fs_scheme_create(const char *code, const char *kind, fs_scheme **out);
FS_API void fs_scheme_free(fs_scheme *s);
FS_API fs_status fs_scheme_id(const fs_scheme *s, char **out);
/// Text of every gadget circuit, in execution order.
FS_API fs_status fs_scheme_circuits(const fs_scheme *s, char **out);
/// Ex-Rec location census as JSON. With `include_followups` the
/// conditional unflagged extractions are counted too.
FS_API fs_status fs_scheme_census(const fs_scheme *s, int include_followups, char **out_json);

/// Exhaustive single-fault certification. procedure: alg1, alg3, alg4,
/// alg4-complete or detect. FS_OK means the check ran; see *pass.
FS_API fs_status fs_certify(const fs_scheme *s, const char *procedure, int *pass, char **out_json);
/// Every single fault of every gadget. format: "csv" or "json".
FS_API fs_status fs_fault_table(const fs_scheme *s, const char *format, char **out);
/// Published golden table of the scheme as CSV, or FS_ERR_NOT_FOUND.
FS_API fs_status fs_golden_table(const fs_scheme *s, char **out_csv);

/// Randomized shared-flag order search. group: e.g. "g7,g8" (1-based).
/// FS_ERR_FAILED when the budget check or the search fails; the report is
/// still written.
FS_API fs_status fs_search(const char *code, const char *group, uint64_t seed, size_t max_iters, char **out_circuit,
                           char **out_json);

/// target: "memory" or "computation". Fails with FS_ERR_NOT_CERTIFIED
/// unless the scheme certifies under the procedure.
FS_API fs_status fs_experiment_create(const fs_scheme *s, const char *procedure, const char *target,
                                      fs_experiment **out);
FS_API void fs_experiment_free(fs_experiment *e);
/// `<code>_<scheme>_<procedure>_g<gamma>`.
FS_API fs_status fs_experiment_name(const fs_experiment *e, double gamma, char **out);

typedef struct fs_threshold_options {
    double p_min;
    double p_max;
    uint64_t initial_trials;
    uint64_t max_trials_per_point;
    uint64_t budget;
    double rel_width;
    double decision_z;
    uint64_t seed;
    /// 0 selects the default worker count.
    unsigned threads;
} fs_threshold_options;

FS_API void fs_threshold_options_default(fs_threshold_options *o);
FS_API fs_status fs_threshold(const fs_experiment *e, double gamma, const fs_threshold_options *o, char **out_csv,
                              char **out_json);
/// Fixed-size estimate at one p; CSV with the threshold header.
FS_API fs_status fs_estimate(const fs_experiment *e, double p, double gamma, uint64_t trials, uint64_t seed,
                             unsigned threads, char **out_csv, char **out_json);

/// Worker count from FLAGSHARE_THREADS or the hardware.
FS_API unsigned fs_default_threads(void);

#ifdef __cplusplus
}
#endif

#endif
