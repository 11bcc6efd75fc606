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

#include "bopelites/bopelites.h"

#include <iostream>
#include <memory>
#include <string>

#include "bopelites/acquisition.hpp"
#include "bopelites/benchmark.hpp"
#include "bopelites/errors.hpp"
#include "bopelites/experiment.hpp"
#include "bopelites/plot.hpp"
#include "bopelites/solvers.hpp"
#include "bopelites/version.hpp"

struct bope_problem {
    bopelites::BenchmarkProblem problem;
};

struct bope_grid {
    bopelites::NicheGrid grid;
};

struct bope_trace {
    bopelites::SolverTrace trace;
};

namespace {

thread_local std::string last_error;

bope_status fail(bope_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Runs body, translating library exceptions into status codes.
template <typename Body>
bope_status guarded(Body&& body) {
    try {
        body();
        last_error.clear();
        return BOPE_OK;
    } catch (const bopelites::InvalidArgument& e) {
        return fail(BOPE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const bopelites::NumericalError& e) {
        return fail(BOPE_ERR_NUMERICAL, e.what());
    } catch (const bopelites::ExhaustedError& e) {
        return fail(BOPE_ERR_EXHAUSTED, e.what());
    } catch (const bopelites::IoError& e) {
        return fail(BOPE_ERR_IO, e.what());
    } catch (const bopelites::ParseError& e) {
        return fail(BOPE_ERR_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(BOPE_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BOPE_ERR_INTERNAL, "unknown error");
    }
}

void require(bool condition, const char* message) {
    if (!condition) {
        throw bopelites::InvalidArgument(message);
    }
}

bopelites::SolverConfig to_cpp(const bope_solver_config& c) {
    bopelites::SolverConfig s;
    s.n0 = c.n0;
    s.budget = c.budget;
    s.points_per_dim = c.points_per_dim;
    s.gp_init = bopelites::KernelHyperparams::isotropic(c.init_lengthscale, c.init_signal_variance);
    s.bounds = {c.lengthscale_lower, c.lengthscale_upper, c.variance_lower, c.variance_upper};
    s.restarts = c.restarts;
    s.seed = c.seed;
    s.f_min = c.f_min;
    s.relative_jitter = c.relative_jitter;
    return s;
}

bopelites::SolverKind to_cpp(bope_solver solver) {
    switch (solver) {
    case BOPE_SOLVER_BOP_ELITES:
        return bopelites::SolverKind::BopElites;
    case BOPE_SOLVER_SEQUENTIAL:
        return bopelites::SolverKind::Sequential;
    case BOPE_SOLVER_INDEPENDENT:
        return bopelites::SolverKind::Independent;
    }
    throw bopelites::InvalidArgument("unknown solver");
}

bopelites::ProgressCallback progress_printer(int verbose) {
    if (!verbose) {
        return {};
    }
    return [](std::size_t done, std::size_t total) { std::cerr << "problem " << done << "/" << total << " done\n"; };
}

} // namespace

extern "C" {

const char* bope_last_error(void) {
    return last_error.c_str();
}

const char* bope_version(void) {
    return bopelites::kVersion;
}

const char* bope_status_string(bope_status status) {
    switch (status) {
    case BOPE_OK:
        return "ok";
    case BOPE_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case BOPE_ERR_NUMERICAL:
        return "numerical failure";
    case BOPE_ERR_EXHAUSTED:
        return "candidates exhausted";
    case BOPE_ERR_IO:
        return "i/o error";
    case BOPE_ERR_PARSE:
        return "parse error";
    case BOPE_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void bope_solver_config_default(bope_solver_config* config) {
    if (config == nullptr) {
        return;
    }
    const bopelites::SolverConfig d;
    *config = bope_solver_config{d.n0,
                                 d.budget,
                                 d.points_per_dim,
                                 d.gp_init.lengthscales[0],
                                 d.gp_init.signal_variance,
                                 d.bounds.lengthscale_lower,
                                 d.bounds.lengthscale_upper,
                                 d.bounds.variance_lower,
                                 d.bounds.variance_upper,
                                 d.restarts,
                                 d.seed,
                                 d.f_min,
                                 d.relative_jitter};
}

void bope_experiment_config_default(bope_experiment_config* config) {
    if (config == nullptr) {
        return;
    }
    *config = bope_experiment_config{};
    config->n_problems = 100;
    config->solver_mask = (1u << BOPE_SOLVER_BOP_ELITES) | (1u << BOPE_SOLVER_SEQUENTIAL) |
                          (1u << BOPE_SOLVER_INDEPENDENT);
    bope_solver_config_default(&config->solver);
    config->master_seed = 0;
    config->workers = 1;
    config->boundaries = nullptr;
    config->boundary_count = 0;
}

bope_status bope_problem_generate(uint64_t seed, bope_problem** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new bope_problem{bopelites::BenchmarkProblem::generate(seed)};
    });
}

bope_status bope_problem_load(const char* path, bope_problem** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        *out = new bope_problem{bopelites::BenchmarkProblem::load(path)};
    });
}

bope_status bope_problem_save(const bope_problem* problem, const char* path) {
    return guarded([&] {
        require(problem != nullptr && path != nullptr, "null argument");
        problem->problem.save(path);
    });
}

bope_status bope_problem_evaluate(const bope_problem* problem, double x, double* objective, double* feature) {
    return guarded([&] {
        require(problem != nullptr, "problem is null");
        const bopelites::Point p = bopelites::Point::Constant(1, x);
        if (objective != nullptr) {
            *objective = problem->problem.objective(p);
        }
        if (feature != nullptr) {
            *feature = problem->problem.features(p)[0];
        }
    });
}

uint64_t bope_problem_seed(const bope_problem* problem) {
    return problem != nullptr ? problem->problem.seed() : 0;
}

void bope_problem_free(bope_problem* problem) {
    delete problem;
}

bope_status bope_grid_create(size_t feature_count, const size_t* counts, const double* boundaries, bope_grid** out) {
    return guarded([&] {
        require(out != nullptr && counts != nullptr, "null argument");
        std::vector<std::vector<double>> lists(feature_count);
        std::size_t offset = 0;
        for (std::size_t i = 0; i < feature_count; ++i) {
            require(counts[i] == 0 || boundaries != nullptr, "boundaries is null");
            lists[i].assign(boundaries + offset, boundaries + offset + counts[i]);
            offset += counts[i];
        }
        *out = new bope_grid{bopelites::NicheGrid(std::move(lists))};
    });
}

bope_status bope_grid_default(bope_grid** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new bope_grid{bopelites::default_grid()};
    });
}

size_t bope_grid_niche_count(const bope_grid* grid) {
    return grid != nullptr ? grid->grid.niche_count() : 0;
}

bope_status bope_grid_classify(const bope_grid* grid, const double* features, size_t* niche) {
    return guarded([&] {
        require(grid != nullptr && features != nullptr && niche != nullptr, "null argument");
        *niche = grid->grid.classify(std::span<const double>(features, grid->grid.feature_count())).index;
    });
}

bope_status bope_grid_membership(const bope_grid* grid, const double* means, const double* sds,
                                 double* probabilities) {
    return guarded([&] {
        require(grid != nullptr && means != nullptr && sds != nullptr && probabilities != nullptr, "null argument");
        std::vector<bopelites::Posterior> posts;
        for (std::size_t i = 0; i < grid->grid.feature_count(); ++i) {
            require(sds[i] >= 0.0, "posterior sd must be non-negative");
            posts.push_back({means[i], sds[i]});
        }
        const std::vector<double> p = grid->grid.all_membership_probabilities(posts);
        std::copy(p.begin(), p.end(), probabilities);
    });
}

void bope_grid_free(bope_grid* grid) {
    delete grid;
}

double bope_expected_improvement(double mean, double sd, double incumbent) {
    return bopelites::expected_improvement({mean, sd}, incumbent);
}

bope_status bope_solve(bope_solver solver, const bope_problem* problem, const bope_grid* grid,
                       const bope_solver_config* config, bope_trace** out) {
    return guarded([&] {
        require(problem != nullptr && grid != nullptr && config != nullptr && out != nullptr, "null argument");
        *out = new bope_trace{bopelites::run_solver(to_cpp(solver), problem->problem, grid->grid, to_cpp(*config))};
    });
}

size_t bope_trace_length(const bope_trace* trace) {
    return trace != nullptr ? trace->trace.rows.size() : 0;
}

bope_status bope_trace_row_at(const bope_trace* trace, size_t index, bope_trace_row* row) {
    return guarded([&] {
        require(trace != nullptr && row != nullptr, "null argument");
        require(index < trace->trace.rows.size(), "trace index out of range");
        const bopelites::TraceRow& r = trace->trace.rows[index];
        *row = bope_trace_row{r.iteration,
                              r.candidate_index,
                              r.x[0],
                              r.y,
                              r.g.at(0),
                              r.niche,
                              r.improved ? 1 : 0,
                              r.total_error,
                              r.active_niche ? static_cast<long>(*r.active_niche) : -1L};
    });
}

double bope_trace_final_error(const bope_trace* trace) {
    if (trace == nullptr || trace->trace.rows.empty()) {
        return 0.0;
    }
    return trace->trace.rows.back().total_error;
}

void bope_trace_free(bope_trace* trace) {
    delete trace;
}

bope_status bope_generate_suite(size_t n_problems, uint64_t master_seed, const char* out_dir) {
    return guarded([&] {
        require(out_dir != nullptr, "out_dir is null");
        bopelites::ExperimentConfig config;
        config.n_problems = n_problems;
        config.master_seed = master_seed;
        bopelites::write_problem_suite(config, out_dir);
    });
}

bope_status bope_experiment_run(const bope_experiment_config* config, const char* out_dir, int verbose) {
    return guarded([&] {
        require(config != nullptr && out_dir != nullptr, "null argument");
        bopelites::ExperimentConfig c;
        c.n_problems = config->n_problems;
        c.solvers.clear();
        for (bope_solver s : {BOPE_SOLVER_BOP_ELITES, BOPE_SOLVER_SEQUENTIAL, BOPE_SOLVER_INDEPENDENT}) {
            if (config->solver_mask & (1u << s)) {
                c.solvers.push_back(to_cpp(s));
            }
        }
        c.solver = to_cpp(config->solver);
        c.master_seed = config->master_seed;
        c.workers = config->workers;
        if (config->boundaries != nullptr) {
            c.grid_boundaries = {
                std::vector<double>(config->boundaries, config->boundaries + config->boundary_count)};
        }
        const bopelites::ExperimentResult result = bopelites::run_experiment(c, progress_printer(verbose));
        bopelites::write_experiment(c, result, out_dir);
    });
}

bope_status bope_experiment_replay(const char* manifest_path, const char* out_dir, size_t workers, int verbose) {
    return guarded([&] {
        require(manifest_path != nullptr && out_dir != nullptr, "null argument");
        nlohmann::json manifest;
        try {
            manifest = nlohmann::json::parse(bopelites::read_text_file(manifest_path));
        } catch (const nlohmann::json::exception& e) {
            throw bopelites::ParseError(std::string(manifest_path) + ": " + e.what());
        }
        if (!manifest.contains("config")) {
            throw bopelites::ParseError(std::string(manifest_path) + ": missing config");
        }
        bopelites::ExperimentConfig c = bopelites::config_from_json(manifest["config"]);
        if (workers > 0) {
            c.workers = workers;
        }
        const bopelites::ExperimentResult result = bopelites::run_experiment(c, progress_printer(verbose));
        bopelites::write_experiment(c, result, out_dir);
    });
}

bope_status bope_summarize(const char* traces_csv, const char* summary_csv) {
    return guarded([&] {
        require(traces_csv != nullptr && summary_csv != nullptr, "null argument");
        const auto summary = bopelites::summarize(bopelites::read_traces_csv(traces_csv));
        bopelites::write_text_file(summary_csv, bopelites::summary_to_csv(summary));
    });
}

bope_status bope_plot(const char* summary_csv, const char* out_dir) {
    return guarded([&] {
        require(summary_csv != nullptr && out_dir != nullptr, "null argument");
        bopelites::emit_plots(bopelites::read_summary_csv(summary_csv), out_dir);
    });
}

bope_status bope_acquisition_sweep(const bope_problem* problem, const bope_grid* grid,
                                   const bope_solver_config* config, const char* csv_path) {
    return guarded([&] {
        require(problem != nullptr && grid != nullptr && config != nullptr && csv_path != nullptr, "null argument");
        bopelites::write_text_file(csv_path,
                                   bopelites::acquisition_sweep_csv(problem->problem, grid->grid, to_cpp(*config)));
    });
}

} // extern "C"
