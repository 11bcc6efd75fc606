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

#include "bopelites/solvers.hpp"

#include "bopelites/acquisition.hpp"
#include "bopelites/errors.hpp"
#include "bopelites/experiment.hpp"
#include "bopelites/rng.hpp"

namespace bopelites {

std::string_view solver_name(SolverKind kind) {
    switch (kind) {
    case SolverKind::BopElites:
        return "bop-elites";
    case SolverKind::Sequential:
        return "sequential";
    case SolverKind::Independent:
        return "independent";
    }
    return "unknown";
}

SolverKind parse_solver(std::string_view name) {
    for (SolverKind kind : {SolverKind::BopElites, SolverKind::Sequential, SolverKind::Independent}) {
        if (name == solver_name(kind)) {
            return kind;
        }
    }
    throw InvalidArgument("unknown solver '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
    if (n0 == 0) {
        throw InvalidArgument("n0 must be positive");
    }
    if (budget < n0) {
        throw InvalidArgument("budget must be at least n0");
    }
    if (points_per_dim < 2) {
        throw InvalidArgument("points_per_dim must be at least 2");
    }
    if (gp_init.dim() == 0 || !(gp_init.signal_variance > 0.0) || !(gp_init.lengthscales.array() > 0.0).all()) {
        throw InvalidArgument("initial kernel hyperparameters must be positive");
    }
}

std::vector<std::size_t> initial_design(std::size_t candidate_count, const SolverConfig& config) {
    return sample_initial_indices(candidate_count, config.n0, derive_seed(config.seed, kInitialDesignStream));
}

SurrogateModels train_surrogates(const Dataset& data, const SolverConfig& config, std::uint64_t stream) {
    const Eigen::MatrixXd x = data.inputs();
    KernelHyperparams init = config.gp_init;
    if (init.dim() == 1 && data.dim() > 1) {
        init = KernelHyperparams::isotropic(init.lengthscales[0], init.signal_variance, data.dim());
    }
    TrainingOptions options;
    options.bounds = config.bounds;
    options.restarts = config.restarts;
    options.relative_jitter = config.relative_jitter;

    auto fit_one = [&](const Eigen::VectorXd& y, std::uint64_t model_index) {
        options.seed = derive_seed(config.seed, 1 + stream * 64 + model_index);
        const TrainingResult trained = train_hyperparams(x, y, init, options);
        const double jitter = config.relative_jitter * trained.hyperparams.signal_variance;
        return GpModel::fit(x, y, trained.hyperparams, jitter);
    };

    std::vector<GpModel> features;
    for (std::size_t j = 0; j < data.feature_count(); ++j) {
        features.push_back(fit_one(data.features(j), j + 1));
    }
    return SurrogateModels{fit_one(data.objectives(), 0), std::move(features)};
}

namespace {

std::vector<KernelHyperparams> hyperparams_of(const SurrogateModels& models) {
    std::vector<KernelHyperparams> out{models.objective.hyperparams()};
    for (const GpModel& m : models.features) {
        out.push_back(m.hyperparams());
    }
    return out;
}

std::vector<Posterior> feature_posteriors(const SurrogateModels& models, const Point& x) {
    std::vector<Posterior> out;
    out.reserve(models.features.size());
    for (const GpModel& m : models.features) {
        out.push_back(m.predict(x));
    }
    return out;
}

// State shared by the three loops: candidates, ground truth, the scored
// archive and the record of evaluated candidates.
class Run {
public:
    Run(SolverKind kind, const Problem& problem, const NicheGrid& grid, const SolverConfig& config)
        : problem_(problem),
          config_(config),
          candidates_(discretize(problem.domain(), config.points_per_dim)),
          truth_(compute_ground_truth(problem, candidates_, grid)),
          data_(problem.domain().dim(), problem.feature_count()),
          evaluated_(candidates_.size(), false),
          trace_{kind, {}, EliteArchive(grid, config.f_min)} {
        config.validate();
        if (problem.feature_count() != grid.feature_count()) {
            throw InvalidArgument("problem feature count does not match the niche grid");
        }
        if (config.budget > candidates_.size()) {
            throw InvalidArgument("budget exceeds the number of candidates");
        }
    }

    const CandidateSet& candidates() const { return candidates_; }
    const Dataset& data() const { return data_; }
    const std::vector<bool>& evaluated() const { return evaluated_; }
    const EliteArchive& archive() const { return trace_.archive; }
    const NicheGrid& grid() const { return trace_.archive.grid(); }
    const SolverConfig& config() const { return config_; }

    const Observation& evaluate(std::size_t index, std::optional<std::size_t> active,
                                std::vector<KernelHyperparams> hyperparams) {
        Observation obs = problem_.evaluate(candidates_.point(index));
        evaluated_[index] = true;
        const ArchiveUpdate update = trace_.archive.update(obs);
        TraceRow row;
        row.iteration = trace_.rows.size() + 1;
        row.candidate_index = index;
        row.x = obs.x;
        row.y = obs.y;
        row.g = obs.g;
        row.niche = update.niche.index;
        row.improved = update.improved;
        row.total_error = total_error(trace_.archive, truth_);
        row.active_niche = active;
        row.hyperparams = std::move(hyperparams);
        trace_.rows.push_back(std::move(row));
        data_.add(std::move(obs));
        return data_.observations().back();
    }

    void evaluate_initial_design() {
        for (std::size_t index : initial_design(candidates_.size(), config_)) {
            evaluate(index, std::nullopt, {});
        }
    }

    std::size_t acquisition_steps() const { return config_.budget - config_.n0; }

    SolverTrace finish() { return std::move(trace_); }

private:
    const Problem& problem_;
    const SolverConfig& config_;
    CandidateSet candidates_;
    GroundTruth truth_;
    Dataset data_;
    std::vector<bool> evaluated_;
    SolverTrace trace_;
};

// Sequential and BOP-Elites share one surrogate loop and differ only in the
// acquisition; `active_niche` returns the targeted niche or nullopt for EJIE.
template <typename ActiveNiche>
SolverTrace run_shared_models(SolverKind kind, const Problem& problem, const NicheGrid& grid,
                              const SolverConfig& config, ActiveNiche active_niche) {
    Run run(kind, problem, grid, config);
    run.evaluate_initial_design();
    for (std::size_t step = 0; step < run.acquisition_steps(); ++step) {
        const SurrogateModels models = train_surrogates(run.data(), config, step + 1);
        const std::optional<std::size_t> active = active_niche(step);
        const std::optional<NicheId> target =
            active ? std::optional<NicheId>(grid.decode(*active)) : std::nullopt;
        const std::size_t choice = argmax_acquisition(
            run.candidates().size(),
            [&](std::size_t i) {
                const Point x = run.candidates().point(i);
                const Posterior objective = models.objective.predict(x);
                const std::vector<Posterior> features = feature_posteriors(models, x);
                if (target) {
                    return niche_weighted_ei(objective, features, *target, run.archive());
                }
                return ejie(objective, features, run.archive()).total;
            },
            run.evaluated());
        run.evaluate(choice, active, hyperparams_of(models));
    }
    return run.finish();
}

} // namespace

SolverTrace run_bop_elites(const Problem& problem, const NicheGrid& grid, const SolverConfig& config) {
    return run_shared_models(SolverKind::BopElites, problem, grid, config,
                             [](std::size_t) { return std::optional<std::size_t>{}; });
}

SolverTrace run_sequential(const Problem& problem, const NicheGrid& grid, const SolverConfig& config) {
    const std::size_t niches = grid.niche_count();
    return run_shared_models(SolverKind::Sequential, problem, grid, config,
                             [niches](std::size_t step) { return std::optional<std::size_t>(step % niches); });
}

SolverTrace run_independent(const Problem& problem, const NicheGrid& grid, const SolverConfig& config) {
    Run run(SolverKind::Independent, problem, grid, config);
    run.evaluate_initial_design();

    // Each niche owns a dataset seeded with the initial design and an archive
    // of its own observations for the EI incumbent.
    const std::size_t niches = grid.niche_count();
    std::vector<Dataset> datasets(niches, run.data());
    std::vector<EliteArchive> own_archives(niches, EliteArchive(grid, config.f_min));
    for (EliteArchive& a : own_archives) {
        for (const Observation& obs : run.data().observations()) {
            a.update(obs);
        }
    }

    for (std::size_t step = 0; step < run.acquisition_steps(); ++step) {
        const std::size_t c = step % niches;
        const NicheId target = grid.decode(c);
        const SurrogateModels models = train_surrogates(datasets[c], config, step + 1);
        const std::size_t choice = argmax_acquisition(
            run.candidates().size(),
            [&](std::size_t i) {
                const Point x = run.candidates().point(i);
                return niche_weighted_ei(models.objective.predict(x), feature_posteriors(models, x), target,
                                         own_archives[c]);
            },
            run.evaluated());
        const Observation& obs = run.evaluate(choice, c, hyperparams_of(models));
        datasets[c].add(obs);
        own_archives[c].update(obs);
    }
    return run.finish();
}

std::string acquisition_sweep_csv(const Problem& problem, const NicheGrid& grid, const SolverConfig& config) {
    config.validate();
    const CandidateSet candidates = discretize(problem.domain(), config.points_per_dim);
    Dataset data(problem.domain().dim(), problem.feature_count());
    EliteArchive archive(grid, config.f_min);
    for (std::size_t index : initial_design(candidates.size(), config)) {
        Observation obs = problem.evaluate(candidates.point(index));
        archive.update(obs);
        data.add(std::move(obs));
    }
    const SurrogateModels models = train_surrogates(data, config, 1);
    std::string out = "candidate,x,total";
    for (std::size_t c = 0; c < grid.niche_count(); ++c) {
        out += ",term_" + std::to_string(c);
    }
    out += "\n";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Point x = candidates.point(i);
        const AcquisitionScore score = ejie(models.objective.predict(x), feature_posteriors(models, x), archive);
        out += std::to_string(i) + ",";
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            out += (j > 0 ? ";" : "") + format_double(x[j]);
        }
        out += "," + format_double(score.total);
        for (double term : score.per_niche) {
            out += "," + format_double(term);
        }
        out += "\n";
    }
    return out;
}

SolverTrace run_solver(SolverKind kind, const Problem& problem, const NicheGrid& grid, const SolverConfig& config) {
    switch (kind) {
    case SolverKind::BopElites:
        return run_bop_elites(problem, grid, config);
    case SolverKind::Sequential:
        return run_sequential(problem, grid, config);
    case SolverKind::Independent:
        return run_independent(problem, grid, config);
    }
    throw InvalidArgument("unknown solver kind");
}

} // namespace bopelites
