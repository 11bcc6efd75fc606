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

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bopelites/bopelites.h"

namespace {

int report(bope_status status) {
    if (status != BOPE_OK) {
        std::cerr << "error (" << bope_status_string(status) << "): " << bope_last_error() << "\n";
        return static_cast<int>(status);
    }
    return 0;
}

unsigned parse_solver_mask(const std::string& list) {
    unsigned mask = 0;
    std::stringstream in(list);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name == "bop-elites") {
            mask |= 1u << BOPE_SOLVER_BOP_ELITES;
        } else if (name == "sequential") {
            mask |= 1u << BOPE_SOLVER_SEQUENTIAL;
        } else if (name == "independent") {
            mask |= 1u << BOPE_SOLVER_INDEPENDENT;
        } else {
            throw CLI::ValidationError("--solvers", "unknown solver '" + name + "'");
        }
    }
    return mask;
}

struct Shared {
    bope_solver_config solver{};
    std::uint64_t seed = 0;
};

void add_solver_flags(CLI::App* cmd, Shared& s) {
    cmd->add_option("--budget", s.solver.budget, "total true-function evaluations")->capture_default_str();
    cmd->add_option("--n0", s.solver.n0, "initial design size")->capture_default_str();
    cmd->add_option("--grid-points", s.solver.points_per_dim, "candidates per input dimension")
        ->capture_default_str();
    cmd->add_option("--restarts", s.solver.restarts, "random restarts of hyperparameter training")
        ->capture_default_str();
    cmd->add_option("--seed", s.seed, "master seed")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian optimisation of elites: solvers and benchmark harness"};
    app.set_version_flag("--version", std::string(bope_version()));
    app.require_subcommand(1);

    Shared shared;
    bope_solver_config_default(&shared.solver);
    std::string out = "results";
    std::size_t problems = 100;
    std::size_t workers = 1;
    std::string solvers = "bop-elites,sequential,independent";
    std::string manifest;
    bool verbose = false;

    auto* generate = app.add_subcommand("generate", "write a suite of benchmark problem files");
    generate->add_option("--problems", problems, "number of problems")->capture_default_str();
    generate->add_option("--seed", shared.seed, "master seed")->capture_default_str();
    generate->add_option("--out", out, "output directory")->capture_default_str();

    auto* run = app.add_subcommand("run", "run solvers over a generated problem suite");
    run->add_option("--problems", problems, "number of problems")->capture_default_str();
    add_solver_flags(run, shared);
    run->add_option("--solvers", solvers, "comma-separated subset of bop-elites,sequential,independent")
        ->capture_default_str();
    run->add_option("--out", out, "output directory")->capture_default_str();
    run->add_option("--workers", workers, "worker threads (problem-level)")->capture_default_str();
    run->add_option("--manifest", manifest, "replay the configuration stored in a manifest.json");
    run->add_flag("-v,--verbose", verbose, "print progress");

    std::string traces = "results/traces.csv";
    std::string summary_out = "results/summary.csv";
    auto* summarize = app.add_subcommand("summarize", "mean TE and standard error per solver and iteration");
    summarize->add_option("traces", traces, "traces CSV")->required();
    summarize->add_option("--out", summary_out, "summary CSV to write")->capture_default_str();

    std::string summary_in;
    auto* plot = app.add_subcommand("plot", "draw linear and log convergence plots as SVG");
    plot->add_option("summary", summary_in, "summary CSV")->required();
    plot->add_option("--out", out, "output directory")->capture_default_str();

    std::string problem_path;
    std::string sweep_out = "sweep.csv";
    auto* sweep = app.add_subcommand("sweep", "dump the acquisition over all candidates after the initial design");
    sweep->add_option("problem", problem_path, "problem JSON file")->required();
    add_solver_flags(sweep, shared);
    sweep->add_option("--out", sweep_out, "CSV to write")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (*generate) {
        return report(bope_generate_suite(problems, shared.seed, out.c_str()));
    }
    if (*run) {
        if (!manifest.empty()) {
            return report(bope_experiment_replay(manifest.c_str(), out.c_str(), run->count("--workers") ? workers : 0,
                                                 verbose ? 1 : 0));
        }
        bope_experiment_config config;
        bope_experiment_config_default(&config);
        config.n_problems = problems;
        try {
            config.solver_mask = parse_solver_mask(solvers);
        } catch (const CLI::Error& e) {
            return app.exit(e);
        }
        config.solver = shared.solver;
        config.master_seed = shared.seed;
        config.workers = workers;
        return report(bope_experiment_run(&config, out.c_str(), verbose ? 1 : 0));
    }
    if (*summarize) {
        return report(bope_summarize(traces.c_str(), summary_out.c_str()));
    }
    if (*plot) {
        return report(bope_plot(summary_in.c_str(), out.c_str()));
    }
    if (*sweep) {
        bope_problem* problem = nullptr;
        bope_grid* grid = nullptr;
        if (int rc = report(bope_problem_load(problem_path.c_str(), &problem)); rc != 0) {
            return rc;
        }
        int rc = report(bope_grid_default(&grid));
        if (rc == 0) {
            shared.solver.seed = shared.seed;
            rc = report(bope_acquisition_sweep(problem, grid, &shared.solver, sweep_out.c_str()));
        }
        bope_grid_free(grid);
        bope_problem_free(problem);
        return rc;
    }
    return 0;
}
