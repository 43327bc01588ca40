/* Copyright 2026 The satphase Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libsatphase. Objects are opaque handles released with their
 * _free function. Every call returns a satphase_status; on failure the message
 * is available from satphase_last_error() on the same thread. Strings returned
 * through char** are owned by the caller and released with satphase_string_free.
 *
 * Records are single lines of space-separated key=value fields. Variable and
 * constraint indices in records are 1-based.
 */
#ifndef SATPHASE_H
#define SATPHASE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SATPHASE_API __declspec(dllexport)
#else
#define SATPHASE_API __attribute__((visibility("default")))
#endif

typedef enum satphase_status {
  SATPHASE_OK = 0,
  SATPHASE_E_USAGE = 1,
  SATPHASE_E_PARSE = 2,
  SATPHASE_E_IO = 3,
  SATPHASE_E_ESTIMATION = 4,
  SATPHASE_E_INTERNAL = 5
} satphase_status;

typedef enum satphase_result {
  SATPHASE_SAT = 10,
  SATPHASE_UNSAT = 20,
  SATPHASE_BUDGET_EXCEEDED = 30
} satphase_result;

typedef struct satphase_instance satphase_instance;
typedef struct satphase_distribution satphase_distribution;

SATPHASE_API const char* satphase_version(void);
SATPHASE_API const char* satphase_last_error(void);
SATPHASE_API void satphase_string_free(char* s);

/* Distributions: template lines "t <id> <arity> <hex> [weight]" or named
 * shorthands such as "XOR3_EVEN 1/2". */
SATPHASE_API satphase_status satphase_distribution_parse(const char* text, satphase_distribution** out);
SATPHASE_API satphase_status satphase_distribution_load(const char* path, satphase_distribution** out);
/* "ksat k=3", "kxor k=3" or "dist <path>". */
SATPHASE_API satphase_status satphase_distribution_of_model(const char* model, satphase_distribution** out);
SATPHASE_API void satphase_distribution_free(satphase_distribution* d);
SATPHASE_API satphase_status satphase_distribution_serialize(const satphase_distribution* d, char** out);
/* kind=<...> template=<i> implicates=<...> other_coarse=<0|1> */
SATPHASE_API satphase_status satphase_classify(const satphase_distribution* d, char** record);

/* Instances in the gsat text format, or DIMACS CNF. */
SATPHASE_API satphase_status satphase_instance_parse(const char* text, satphase_instance** out);
SATPHASE_API satphase_status satphase_instance_parse_dimacs(const char* text, satphase_instance** out);
/* Reads either format; DIMACS is recognized by its "p cnf" header. */
SATPHASE_API satphase_status satphase_instance_load(const char* path, satphase_instance** out);
/* m constraints of a model ("ksat k=3", "2p p=0.6", "kxor k=3", "dist <path>"). */
SATPHASE_API satphase_status satphase_generate(const char* model, int n, size_t m, uint64_t seed,
                                               satphase_instance** out);
/* round(density * n) constraints; (2+p)-SAT rounds its two clause counts separately. */
SATPHASE_API satphase_status satphase_generate_density(const char* model, int n, double density, uint64_t seed,
                                                       satphase_instance** out);
SATPHASE_API void satphase_instance_free(satphase_instance* inst);
SATPHASE_API int satphase_instance_num_vars(const satphase_instance* inst);
SATPHASE_API size_t satphase_instance_num_constraints(const satphase_instance* inst);
SATPHASE_API satphase_status satphase_instance_serialize(const satphase_instance* inst, char** out);
SATPHASE_API satphase_status satphase_instance_to_dimacs(const satphase_instance* inst, char** out);

typedef struct satphase_solve_info {
  satphase_result result;
  uint64_t tree_size;
  int max_depth;
  uint64_t gauss_ops;
} satphase_solve_info;

/* method: "dpll", "gauss" or "brute"; heuristic: "lowest-index" or
 * "max-occurrence" (NULL for the default); budget < 0 means none.
 * record: status=... tree_size=... max_depth=... method=... gauss_ops=... witness=<0/1 string or ->
 * Either output pointer may be NULL. */
SATPHASE_API satphase_status satphase_solve(const satphase_instance* inst, const char* method, const char* heuristic,
                                            int64_t budget, satphase_solve_info* info, char** record);

/* mode: "exact" or "mus". language may be NULL, in which case the instance's
 * own templates are the candidate constraints. certificates, when not NULL,
 * receives every certificate in the instance text format. */
SATPHASE_API satphase_status satphase_spine(const satphase_instance* inst, const satphase_distribution* language,
                                            const char* mode, char** record, char** certificates);
/* Deletion-based minimal unsatisfiable subset. core may be NULL. */
SATPHASE_API satphase_status satphase_mus(const satphase_instance* inst, char** record, satphase_instance** core);

SATPHASE_API satphase_status satphase_c_star(const satphase_instance* inst, char** record);
/* r as "p/q", an integer or a decimal. */
SATPHASE_API satphase_status satphase_deficiency(const satphase_instance* inst, const char* r, char** record);
SATPHASE_API satphase_status satphase_sparse(const satphase_instance* inst, const char* x, const char* y, char** record);
SATPHASE_API satphase_status satphase_cs_bound(int k, double c, double y, double* epsilon, double* x, char** record);
SATPHASE_API satphase_status satphase_private_ordering(const satphase_instance* inst, char** record);

/* Sweep configuration text; relative paths resolve against base_dir (NULL: "."). */
SATPHASE_API satphase_status satphase_sweep(const char* config, const char* base_dir, char** csv, char** warnings);

typedef struct satphase_threshold_options {
  size_t trials;      /* 0: 200 */
  uint64_t seed;
  double tolerance;   /* <= 0: 0.02 */
  double max_density; /* <= 0: model default */
  const char* scaling; /* "linear", "sqrt", "auto" or NULL */
} satphase_threshold_options;

SATPHASE_API satphase_status satphase_threshold(const char* model, int n, double target,
                                                const satphase_threshold_options* opts, double* density,
                                                char** record);
SATPHASE_API satphase_status satphase_window_width(const char* model, int n, double epsilon,
                                                   const satphase_threshold_options* opts, double* width,
                                                   char** record);

#ifdef __cplusplus
}
#endif

#endif /* SATPHASE_H */
