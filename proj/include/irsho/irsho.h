/*
Copyright 2026 The irsho Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#ifndef IRSHO_IRSHO_H_
#define IRSHO_IRSHO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(IRSHO_BUILDING_LIBRARY)
#define IRSHO_API __declspec(dllexport)
#else
#define IRSHO_API __declspec(dllimport)
#endif
#else
#define IRSHO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning int returns one of these. */
enum {
  IRSHO_OK = 0,
  IRSHO_E_INVALID_ARGUMENT = 1,
  IRSHO_E_CONFIG = 2,
  IRSHO_E_NEGATIVE_DENSITY = 3,
  IRSHO_E_MU_OUT_OF_RANGE = 4,
  IRSHO_E_DEGENERATE_LENGTH = 5,
  IRSHO_E_NON_CONVERGENCE = 6,
  IRSHO_E_NON_FINITE_INTEGRAND = 7,
  IRSHO_E_TAIL_NOT_DECAYING = 8,
  IRSHO_E_UNNORMALIZED_DENSITY = 9,
  IRSHO_E_DEGENERATE_STATE = 10,
  IRSHO_E_DEGENERATE_CONDITION = 11,
  IRSHO_E_ZERO_DISTANCE = 12,
  IRSHO_E_MISSING_IRS_DISTANCE = 13,
  IRSHO_E_EMPTY_WORLD = 14,
  IRSHO_E_STUCK_USER = 15,
  IRSHO_E_TOO_FEW_VALID_DROPS = 16,
  IRSHO_E_IO = 17,
  IRSHO_E_INTERNAL = 99
};

/* LoS states, used as array indices. */
enum { IRSHO_LOS = 0, IRSHO_NLOS = 1, IRSHO_RLOS = 2 };

/* Monte-Carlo protocols. */
enum { IRSHO_PROTO_DENSITY = 0, IRSHO_PROTO_ASSOCIATION = 1, IRSHO_PROTO_TRANSITION = 2, IRSHO_PROTO_HANDOVER = 3 };

typedef struct irsho_scenario irsho_scenario;
typedef struct irsho_sweep irsho_sweep;
typedef struct irsho_sweep_result irsho_sweep_result;

IRSHO_API const char* irsho_version(void);
IRSHO_API const char* irsho_status_name(int status);
/* Message of the last failure on the calling thread. */
IRSHO_API const char* irsho_last_error(void);
/* Numeric failures (quadrature, degenerate conditioning, too many discarded drops). */
IRSHO_API int irsho_status_is_numeric(int status);
/* Releases strings returned through char** out-parameters. */
IRSHO_API void irsho_free(void* p);

/* Scenario. Keys and values use the configuration units (per km^2, dBm, m). */
IRSHO_API int irsho_scenario_create(irsho_scenario** out);
IRSHO_API int irsho_scenario_from_file(const char* path, irsho_scenario** out);
IRSHO_API int irsho_scenario_from_string(const char* text, irsho_scenario** out);
IRSHO_API int irsho_scenario_set(irsho_scenario* s, const char* key, const char* value);
IRSHO_API int irsho_scenario_get(const irsho_scenario* s, const char* key, double* out);
/* Returns the status of the first violated constraint; all messages go to *report when non-null. */
IRSHO_API int irsho_scenario_validate(const irsho_scenario* s, char** report);
IRSHO_API int irsho_scenario_to_string(const irsho_scenario* s, char** out);
IRSHO_API void irsho_scenario_destroy(irsho_scenario* s);

/* Analytic engine. */
IRSHO_API int irsho_bs_density(const irsho_scenario* s, double d_m, int exact_mode, double out_per_km2[3]);
IRSHO_API int irsho_association(const irsho_scenario* s, double out[3]);
/* Row-major 3x3 matrix; rows of states with zero association probability are zero. */
IRSHO_API int irsho_transition(const irsho_scenario* s, double out[9]);

typedef struct {
  int qmc_nodes;       /* starting node count, 0 = default */
  int max_qmc_nodes;   /* doubling cap, 0 = default */
  uint64_t seed;
} irsho_ho_options;

typedef struct {
  double h;
  double h_given[3];
  double assoc[3];
  double trans[9];
  int qmc_nodes;
} irsho_ho_result;

IRSHO_API int irsho_handover(const irsho_scenario* s, const irsho_ho_options* opt, irsho_ho_result* out);

/* Monte-Carlo engine. */
typedef struct {
  int protocol;
  uint64_t n_drops;
  uint64_t seed;
  unsigned threads; /* 0 = hardware concurrency */
  double d_fixed_m; /* density protocol */
  double sim_radius_m; /* 0 = default */
} irsho_mc_options;

typedef struct {
  uint64_t n_drops, n_valid, n_stuck, n_empty;
  uint64_t k_count[3];
  uint64_t kj_count[9];
  uint64_t ho_count;
  uint64_t ho_by_k[3];
} irsho_mc_result;

IRSHO_API void irsho_mc_options_default(irsho_mc_options* opt);
IRSHO_API int irsho_mc_run(const irsho_scenario* s, const irsho_mc_options* opt, irsho_mc_result* out);
/* Line-oriented world dump: "BS x y" and "BLK x y l beta irs_flag". */
IRSHO_API int irsho_world_dump(const irsho_scenario* s, uint64_t seed, uint64_t drop, double sim_radius_m,
                               const char* path);

/* Sweeps and recipes. quantity: density | association | transition | handover. */
IRSHO_API int irsho_sweep_create(const irsho_scenario* base, const char* quantity, irsho_sweep** out);
/* Keys: param, values, series, engine, mode, drops, seed, gate_sigma, gate_abs, n_c, threads. */
IRSHO_API int irsho_sweep_set(irsho_sweep* sw, const char* key, const char* value);
IRSHO_API int irsho_sweep_describe(const irsho_sweep* sw, char** json);
IRSHO_API int irsho_sweep_run(const irsho_sweep* sw, irsho_sweep_result** out);
IRSHO_API void irsho_sweep_destroy(irsho_sweep* sw);

IRSHO_API int irsho_recipe_list(char** json);
IRSHO_API int irsho_recipe_load(const char* id, irsho_sweep** out);

typedef struct {
  size_t rows, compared, failures, errors;
  double max_abs_diff;
} irsho_summary;

IRSHO_API int irsho_result_csv(const irsho_sweep_result* r, char** out);
IRSHO_API int irsho_result_json(const irsho_sweep_result* r, char** out);
/* Human-readable FAIL/ERROR lines plus a totals line. */
IRSHO_API int irsho_result_summary(const irsho_sweep_result* r, irsho_summary* out, char** report);
IRSHO_API void irsho_result_destroy(irsho_sweep_result* r);

#ifdef __cplusplus
}
#endif

#endif /* IRSHO_IRSHO_H_ */
