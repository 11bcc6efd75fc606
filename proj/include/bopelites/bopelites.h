// Copyright 2026 The bopelites Authors
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

#ifndef BOPELITES_H
#define BOPELITES_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BOPELITES_BUILDING)
#    define BOPE_API __declspec(dllexport)
#  else
#    define BOPE_API __declspec(dllimport)
#  endif
#else
#  define BOPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bope_status {
  BOPE_OK = 0,
  BOPE_ERR_INVALID_ARGUMENT = 1,
  BOPE_ERR_NUMERICAL = 2,
  BOPE_ERR_EXHAUSTED = 3,
  BOPE_ERR_IO = 4,
  BOPE_ERR_PARSE = 5,
  BOPE_ERR_INTERNAL = 6
} bope_status;

typedef enum bope_solver {
  BOPE_SOLVER_BOP_ELITES = 0,
  BOPE_SOLVER_SEQUENTIAL = 1,
  BOPE_SOLVER_INDEPENDENT = 2
} bope_solver;

/* Opaque handles. Every handle returned through an out-parameter is owned by
   the caller and released with the matching _free function. */
typedef struct bope_problem bope_problem;
typedef struct bope_grid bope_grid;
typedef struct bope_trace bope_trace;

typedef struct bope_solver_config {
  size_t n0;
  size_t budget;
  size_t points_per_dim;
  double init_lengthscale;
  double init_signal_variance;
  double lengthscale_lower;
  double lengthscale_upper;
  double variance_lower;
  double variance_upper;
  size_t restarts;
  uint64_t seed;
  double f_min;
  double relative_jitter;
} bope_solver_config;

typedef struct bope_experiment_config {
  size_t n_problems;
  /* Bit set of (1 << bope_solver). */
  unsigned solver_mask;
  bope_solver_config solver;
  uint64_t master_seed;
  size_t workers;
  /* Boundaries of the single feature; NULL selects {4, 8, 12, 16}. */
  const double* boundaries;
  size_t boundary_count;
} bope_experiment_config;

typedef struct bope_trace_row {
  size_t iteration;
  size_t candidate_index;
  double x;
  double y;
  double g;
  size_t niche;
  int improved;
  double total_error;
  /* -1 when no single niche was targeted. */
  long active_niche;
} bope_trace_row;

/* Message for the last failing call on this thread; never NULL. */
BOPE_API const char* bope_last_error(void);
BOPE_API const char* bope_version(void);
BOPE_API const char* bope_status_string(bope_status status);

BOPE_API void bope_solver_config_default(bope_solver_config* config);
BOPE_API void bope_experiment_config_default(bope_experiment_config* config);

/* Benchmark problems. */
BOPE_API bope_status bope_problem_generate(uint64_t seed, bope_problem** out);
BOPE_API bope_status bope_problem_load(const char* path, bope_problem** out);
BOPE_API bope_status bope_problem_save(const bope_problem* problem, const char* path);
BOPE_API bope_status bope_problem_evaluate(const bope_problem* problem, double x, double* objective,
                                           double* feature);
BOPE_API uint64_t bope_problem_seed(const bope_problem* problem);
BOPE_API void bope_problem_free(bope_problem* problem);

/* Niche grids. boundaries holds the lists of every feature back to back;
   counts[i] is the number of boundaries of feature i. */
BOPE_API bope_status bope_grid_create(size_t feature_count, const size_t* counts, const double* boundaries,
                                      bope_grid** out);
BOPE_API bope_status bope_grid_default(bope_grid** out);
BOPE_API size_t bope_grid_niche_count(const bope_grid* grid);
BOPE_API bope_status bope_grid_classify(const bope_grid* grid, const double* features, size_t* niche);
/* probabilities must hold bope_grid_niche_count entries; one (mean, sd) pair
   per feature. */
BOPE_API bope_status bope_grid_membership(const bope_grid* grid, const double* means, const double* sds,
                                          double* probabilities);
BOPE_API void bope_grid_free(bope_grid* grid);

/* Acquisition primitives. */
BOPE_API double bope_expected_improvement(double mean, double sd, double incumbent);

/* Solver runs on benchmark problems. */
BOPE_API bope_status bope_solve(bope_solver solver, const bope_problem* problem, const bope_grid* grid,
                                const bope_solver_config* config, bope_trace** out);
BOPE_API size_t bope_trace_length(const bope_trace* trace);
BOPE_API bope_status bope_trace_row_at(const bope_trace* trace, size_t index, bope_trace_row* row);
BOPE_API double bope_trace_final_error(const bope_trace* trace);
BOPE_API void bope_trace_free(bope_trace* trace);

/* Experiment harness. */
BOPE_API bope_status bope_generate_suite(size_t n_problems, uint64_t master_seed, const char* out_dir);
BOPE_API bope_status bope_experiment_run(const bope_experiment_config* config, const char* out_dir, int verbose);
/* Replays the configuration stored in a manifest.json; workers > 0 overrides
   the recorded worker count. */
BOPE_API bope_status bope_experiment_replay(const char* manifest_path, const char* out_dir, size_t workers,
                                            int verbose);
BOPE_API bope_status bope_summarize(const char* traces_csv, const char* summary_csv);
BOPE_API bope_status bope_plot(const char* summary_csv, const char* out_dir);
/* EJIE sweep over every candidate after the initial design, as CSV. */
BOPE_API bope_status bope_acquisition_sweep(const bope_problem* problem, const bope_grid* grid,
                                            const bope_solver_config* config, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif
