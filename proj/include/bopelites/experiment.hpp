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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bopelites/niche_grid.hpp"
#include "bopelites/solvers.hpp"

namespace bopelites {

struct ExperimentConfig {
    std::size_t n_problems = 100;
    std::vector<SolverKind> solvers{SolverKind::BopElites, SolverKind::Sequential, SolverKind::Independent};
    SolverConfig solver;
    std::vector<std::vector<double>> grid_boundaries{{4.0, 8.0, 12.0, 16.0}};
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;

    std::uint64_t problem_seed(std::size_t problem_id) const { return master_seed + problem_id; }
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// One row of the results table: TE after `evaluations` true-function calls.
struct TraceRecord {
    std::size_t problem_id = 0;
    SolverKind solver = SolverKind::BopElites;
    std::size_t iteration = 0;
    double te = 0.0;
    std::size_t evaluations = 0;
};

struct SummaryRow {
    std::string solver;
    std::size_t iteration = 0;
    double mean_te = 0.0;
    double stderr_te = 0.0;
};

struct ArchiveRecord {
    std::size_t problem_id = 0;
    SolverKind solver = SolverKind::BopElites;
    std::size_t niche = 0;
    Elite elite;
};

struct RunFailure {
    std::size_t problem_id = 0;
    SolverKind solver = SolverKind::BopElites;
    std::string message;
};

struct ExperimentResult {
    std::vector<TraceRecord> rows;
    std::vector<ArchiveRecord> archives;
    std::vector<RunFailure> failures;
    std::vector<SummaryRow> summary;
};

/// Called after each finished problem with (completed, total).
using ProgressCallback = std::function<void(std::size_t, std::size_t)>;

/// Runs every solver on every generated problem. All solvers of one problem
/// share that problem's seed and so its initial design. Problems are spread
/// over `workers` threads; rows are sorted by (problem, solver, iteration) so
/// the output does not depend on scheduling. A solver run that throws is
/// recorded in `failures` and contributes no rows.
ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressCallback& progress = {});

/// Writes problems/, traces.csv, archives.csv, summary.csv, manifest.json and
/// both plots into `dir`.
void write_experiment(const ExperimentConfig& config, const ExperimentResult& result,
                      const std::filesystem::path& dir);

/// Writes problem_NNNN.json files for the configured seeds.
void write_problem_suite(const ExperimentConfig& config, const std::filesystem::path& dir);

inline constexpr const char* kTraceHeader = "problem_id,solver,iteration,te,evaluations";
inline constexpr const char* kSummaryHeader = "solver,iteration,mean_te,stderr_te";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string traces_to_csv(const std::vector<TraceRecord>& rows);
std::vector<TraceRecord> parse_traces_csv(const std::string& text);
std::vector<TraceRecord> read_traces_csv(const std::filesystem::path& path);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_summary_csv(const std::string& text);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

/// Mean TE and standard error (sample sd / sqrt(n)) per (solver, iteration).
/// Solvers keep their first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<TraceRecord>& rows);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace bopelites
