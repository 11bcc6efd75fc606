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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bopelites/archive.hpp"
#include "bopelites/gp.hpp"

namespace bopelites {

enum class SolverKind { BopElites, Sequential, Independent };

std::string_view solver_name(SolverKind kind);
SolverKind parse_solver(std::string_view name);

struct SolverConfig {
    std::size_t n0 = 5;
    std::size_t budget = 40;
    std::size_t points_per_dim = 1000;
    KernelHyperparams gp_init = KernelHyperparams::isotropic(0.5, 0.01);
    HyperparamBounds bounds;
    std::size_t restarts = 100;
    std::uint64_t seed = 0;
    double f_min = 0.0;
    double relative_jitter = 1e-8;

    /// Throws InvalidArgument unless 1 <= n0 <= budget.
    void validate() const;
};

/// One true-function evaluation in a solver run.
struct TraceRow {
    std::size_t iteration = 0; // 1-based evaluation count
    std::size_t candidate_index = 0;
    Point x;
    double y = 0.0;
    std::vector<double> g;
    std::size_t niche = 0;
    bool improved = false;
    double total_error = 0.0;
    /// Niche targeted by Sequential/Independent; empty for initial points and BOP-Elites.
    std::optional<std::size_t> active_niche;
    /// Objective model followed by one per feature; empty for initial points.
    std::vector<KernelHyperparams> hyperparams;
};

struct SolverTrace {
    SolverKind solver = SolverKind::BopElites;
    std::vector<TraceRow> rows;
    EliteArchive archive;
};

/// Stream indices for derive_seed; every solver draws its initial design from
/// kInitialDesignStream so equal seeds give equal starting data.
inline constexpr std::uint64_t kInitialDesignStream = 0;

std::vector<std::size_t> initial_design(std::size_t candidate_count, const SolverConfig& config);

SolverTrace run_bop_elites(const Problem& problem, const NicheGrid& grid, const SolverConfig& config);
SolverTrace run_sequential(const Problem& problem, const NicheGrid& grid, const SolverConfig& config);
SolverTrace run_independent(const Problem& problem, const NicheGrid& grid, const SolverConfig& config);

SolverTrace run_solver(SolverKind kind, const Problem& problem, const NicheGrid& grid, const SolverConfig& config);

/// Objective and feature GPs trained on the same inputs.
struct SurrogateModels {
    GpModel objective;
    std::vector<GpModel> features;
};

/// Retrains hyperparameters from config.gp_init and fits the models.
/// `stream` selects the restart RNG stream.
SurrogateModels train_surrogates(const Dataset& data, const SolverConfig& config, std::uint64_t stream);

/// EJIE at every candidate after evaluating the initial design, as CSV with
/// header candidate,x,total,term_0,...,term_{C-1} (x components joined by ';').
std::string acquisition_sweep_csv(const Problem& problem, const NicheGrid& grid, const SolverConfig& config);

} // namespace bopelites
