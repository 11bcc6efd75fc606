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

#include "bopelites/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "bopelites/benchmark.hpp"
#include "bopelites/errors.hpp"
#include "bopelites/plot.hpp"
#include "bopelites/version.hpp"

namespace bopelites {

namespace fs = std::filesystem;

nlohmann::json config_to_json(const ExperimentConfig& config) {
    std::vector<std::string> solvers;
    for (SolverKind k : config.solvers) {
        solvers.emplace_back(solver_name(k));
    }
    const SolverConfig& s = config.solver;
    return {{"n_problems", config.n_problems},
            {"solvers", solvers},
            {"master_seed", config.master_seed},
            {"workers", config.workers},
            {"grid", {{"boundaries", config.grid_boundaries}}},
            {"n0", s.n0},
            {"budget", s.budget},
            {"points_per_dim", s.points_per_dim},
            {"gp_init",
             {{"lengthscale", std::vector<double>(s.gp_init.lengthscales.begin(), s.gp_init.lengthscales.end())},
              {"signal_variance", s.gp_init.signal_variance}}},
            {"bounds",
             {{"lengthscale", {s.bounds.lengthscale_lower, s.bounds.lengthscale_upper}},
              {"signal_variance", {s.bounds.variance_lower, s.bounds.variance_upper}}}},
            {"restarts", s.restarts},
            {"f_min", s.f_min},
            {"relative_jitter", s.relative_jitter}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    try {
        ExperimentConfig c;
        c.n_problems = j.at("n_problems").get<std::size_t>();
        c.solvers.clear();
        for (const auto& name : j.at("solvers")) {
            c.solvers.push_back(parse_solver(name.get<std::string>()));
        }
        c.master_seed = j.at("master_seed").get<std::uint64_t>();
        c.workers = j.value("workers", std::size_t{1});
        c.grid_boundaries = j.at("grid").at("boundaries").get<std::vector<std::vector<double>>>();
        SolverConfig& s = c.solver;
        s.n0 = j.at("n0").get<std::size_t>();
        s.budget = j.at("budget").get<std::size_t>();
        s.points_per_dim = j.at("points_per_dim").get<std::size_t>();
        const auto ls = j.at("gp_init").at("lengthscale").get<std::vector<double>>();
        s.gp_init.lengthscales = Eigen::Map<const Eigen::VectorXd>(ls.data(), static_cast<Eigen::Index>(ls.size()));
        s.gp_init.signal_variance = j.at("gp_init").at("signal_variance").get<double>();
        const auto lb = j.at("bounds").at("lengthscale").get<std::array<double, 2>>();
        const auto vb = j.at("bounds").at("signal_variance").get<std::array<double, 2>>();
        s.bounds = {lb[0], lb[1], vb[0], vb[1]};
        s.restarts = j.at("restarts").get<std::size_t>();
        s.f_min = j.at("f_min").get<double>();
        s.relative_jitter = j.at("relative_jitter").get<double>();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed experiment config: ") + e.what());
    }
}

namespace {

struct ProblemOutcome {
    std::vector<TraceRecord> rows;
    std::vector<ArchiveRecord> archives;
    std::vector<RunFailure> failures;
};

ProblemOutcome run_problem(const ExperimentConfig& config, const NicheGrid& grid, std::size_t problem_id) {
    ProblemOutcome out;
    const BenchmarkProblem problem = BenchmarkProblem::generate(config.problem_seed(problem_id));
    SolverConfig sc = config.solver;
    sc.seed = config.problem_seed(problem_id);
    for (SolverKind kind : config.solvers) {
        try {
            const SolverTrace trace = run_solver(kind, problem, grid, sc);
            for (const TraceRow& row : trace.rows) {
                out.rows.push_back({problem_id, kind, row.iteration, row.total_error, row.iteration});
            }
            for (std::size_t c = 0; c < trace.archive.niche_count(); ++c) {
                if (const auto& e = trace.archive.elite(c)) {
                    out.archives.push_back({problem_id, kind, c, *e});
                }
            }
        } catch (const NumericalError& e) {
            out.failures.push_back({problem_id, kind, e.what()});
        } catch (const ExhaustedError& e) {
            out.failures.push_back({problem_id, kind, e.what()});
        }
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressCallback& progress) {
    config.solver.validate();
    if (config.n_problems == 0) {
        throw InvalidArgument("experiment needs at least one problem");
    }
    if (config.solvers.empty()) {
        throw InvalidArgument("experiment needs at least one solver");
    }
    const NicheGrid grid(config.grid_boundaries);
    if (grid.feature_count() != 1) {
        throw InvalidArgument("benchmark problems have exactly one feature");
    }

    std::vector<ProblemOutcome> outcomes(config.n_problems);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (std::size_t id = next++; id < config.n_problems; id = next++) {
            try {
                outcomes[id] = run_problem(config, grid, id);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
            const std::size_t finished = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished, config.n_problems);
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(config.workers, 1, config.n_problems);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    ExperimentResult result;
    for (ProblemOutcome& o : outcomes) {
        result.rows.insert(result.rows.end(), o.rows.begin(), o.rows.end());
        result.archives.insert(result.archives.end(), o.archives.begin(), o.archives.end());
        result.failures.insert(result.failures.end(), o.failures.begin(), o.failures.end());
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const TraceRecord& a, const TraceRecord& b) {
        return std::tie(a.problem_id, a.solver, a.iteration) < std::tie(b.problem_id, b.solver, b.iteration);
    });
    result.summary = summarize(result.rows);
    return result;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) {
        throw Error("cannot format double");
    }
    return std::string(buf.data(), end);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

template <typename T>
T parse_field(const std::string& text, std::size_t line_no, const char* column) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ParseError("row " + std::to_string(line_no) + ": invalid " + column + " '" + text + "'");
    }
    return value;
}

// Lines of a CSV after validating the header; returns (line number, fields).
std::vector<std::pair<std::size_t, std::vector<std::string>>> csv_records(const std::string& text,
                                                                          const std::string& header) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw ParseError("row 1: expected header '" + header + "'");
    }
    const std::size_t columns = split_fields(header).size();
    std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
    for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
        if (line.empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != columns) {
            throw ParseError("row " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                             " fields, found " + std::to_string(fields.size()));
        }
        out.emplace_back(line_no, std::move(fields));
    }
    return out;
}

} // namespace

std::string traces_to_csv(const std::vector<TraceRecord>& rows) {
    std::string out = std::string(kTraceHeader) + "\n";
    for (const TraceRecord& r : rows) {
        out += std::to_string(r.problem_id) + "," + std::string(solver_name(r.solver)) + "," +
               std::to_string(r.iteration) + "," + format_double(r.te) + "," + std::to_string(r.evaluations) + "\n";
    }
    return out;
}

std::vector<TraceRecord> parse_traces_csv(const std::string& text) {
    std::vector<TraceRecord> rows;
    for (const auto& [line_no, f] : csv_records(text, kTraceHeader)) {
        TraceRecord r;
        r.problem_id = parse_field<std::size_t>(f[0], line_no, "problem_id");
        try {
            r.solver = parse_solver(f[1]);
        } catch (const InvalidArgument&) {
            throw ParseError("row " + std::to_string(line_no) + ": unknown solver '" + f[1] + "'");
        }
        r.iteration = parse_field<std::size_t>(f[2], line_no, "iteration");
        r.te = parse_field<double>(f[3], line_no, "te");
        r.evaluations = parse_field<std::size_t>(f[4], line_no, "evaluations");
        rows.push_back(r);
    }
    return rows;
}

std::vector<TraceRecord> read_traces_csv(const fs::path& path) {
    return parse_traces_csv(read_text_file(path));
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::string out = std::string(kSummaryHeader) + "\n";
    for (const SummaryRow& r : rows) {
        out += r.solver + "," + std::to_string(r.iteration) + "," + format_double(r.mean_te) + "," +
               format_double(r.stderr_te) + "\n";
    }
    return out;
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
    std::vector<SummaryRow> rows;
    for (const auto& [line_no, f] : csv_records(text, kSummaryHeader)) {
        if (f[0].empty()) {
            throw ParseError("row " + std::to_string(line_no) + ": empty solver");
        }
        rows.push_back({f[0], parse_field<std::size_t>(f[1], line_no, "iteration"),
                        parse_field<double>(f[2], line_no, "mean_te"),
                        parse_field<double>(f[3], line_no, "stderr_te")});
    }
    return rows;
}

std::vector<SummaryRow> read_summary_csv(const fs::path& path) {
    return parse_summary_csv(read_text_file(path));
}

std::vector<SummaryRow> summarize(const std::vector<TraceRecord>& rows) {
    std::vector<SolverKind> order;
    std::map<std::pair<SolverKind, std::size_t>, std::vector<double>> groups;
    for (const TraceRecord& r : rows) {
        if (std::find(order.begin(), order.end(), r.solver) == order.end()) {
            order.push_back(r.solver);
        }
        groups[{r.solver, r.iteration}].push_back(r.te);
    }
    std::vector<SummaryRow> out;
    for (SolverKind kind : order) {
        for (const auto& [key, values] : groups) {
            if (key.first != kind) {
                continue;
            }
            const auto n = static_cast<double>(values.size());
            double mean = 0.0;
            for (double v : values) {
                mean += v;
            }
            mean /= n;
            double ss = 0.0;
            for (double v : values) {
                ss += (v - mean) * (v - mean);
            }
            const double se = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
            out.push_back({std::string(solver_name(kind)), key.second, mean, se});
        }
    }
    return out;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

namespace {

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    }
}

std::string problem_file_name(std::size_t id) {
    std::string digits = std::to_string(id);
    if (digits.size() < 4) {
        digits.insert(0, 4 - digits.size(), '0');
    }
    return "problem_" + digits + ".json";
}

std::string archives_to_csv(const std::vector<ArchiveRecord>& rows) {
    std::string out = "problem_id,solver,niche_index,x,y,g\n";
    for (const ArchiveRecord& r : rows) {
        auto join = [](const auto& values) {
            std::string s;
            for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(values.size()); ++i) {
                s += (i > 0 ? ";" : "") + format_double(values[static_cast<std::size_t>(i)]);
            }
            return s;
        };
        std::vector<double> x(r.elite.x.begin(), r.elite.x.end());
        out += std::to_string(r.problem_id) + "," + std::string(solver_name(r.solver)) + "," +
               std::to_string(r.niche) + "," + join(x) + "," + format_double(r.elite.y) + "," + join(r.elite.g) + "\n";
    }
    return out;
}

} // namespace

void write_problem_suite(const ExperimentConfig& config, const fs::path& dir) {
    ensure_directory(dir);
    for (std::size_t id = 0; id < config.n_problems; ++id) {
        BenchmarkProblem::generate(config.problem_seed(id)).save((dir / problem_file_name(id)).string());
    }
}

void write_experiment(const ExperimentConfig& config, const ExperimentResult& result, const fs::path& dir) {
    ensure_directory(dir);
    write_problem_suite(config, dir / "problems");
    write_text_file(dir / "traces.csv", traces_to_csv(result.rows));
    write_text_file(dir / "archives.csv", archives_to_csv(result.archives));
    write_text_file(dir / "summary.csv", summary_to_csv(result.summary));

    nlohmann::json failures = nlohmann::json::array();
    for (const RunFailure& f : result.failures) {
        failures.push_back({{"problem_id", f.problem_id}, {"solver", solver_name(f.solver)}, {"message", f.message}});
    }
    std::vector<std::uint64_t> seeds;
    for (std::size_t id = 0; id < config.n_problems; ++id) {
        seeds.push_back(config.problem_seed(id));
    }
    const nlohmann::json manifest = {{"version", kVersion},
                                     {"config", config_to_json(config)},
                                     {"problem_seeds", seeds},
                                     {"failures", failures}};
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
    if (!result.summary.empty()) {
        emit_plots(result.summary, dir);
    }
}

} // namespace bopelites
