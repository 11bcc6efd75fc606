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

#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "bopelites/acquisition.hpp"
#include "bopelites/benchmark.hpp"
#include "bopelites/errors.hpp"
#include "bopelites/solvers.hpp"
#include "fixtures.hpp"

using namespace bopelites;

namespace {

SolverConfig small_config(std::uint64_t seed = 3) {
    SolverConfig c;
    c.budget = 15;
    c.points_per_dim = 200;
    c.restarts = 3;
    c.seed = seed;
    return c;
}

void expect_same_hyperparams(const std::vector<KernelHyperparams>& a, const std::vector<KernelHyperparams>& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].lengthscales, b[i].lengthscales);
        EXPECT_EQ(a[i].signal_variance, b[i].signal_variance);
    }
}

std::vector<std::size_t> choices(const SolverTrace& t) {
    std::vector<std::size_t> out;
    for (const auto& r : t.rows) out.push_back(r.candidate_index);
    return out;
}

} // namespace

TEST(SolverConfig, Validation) {
    SolverConfig c;
    EXPECT_NO_THROW(c.validate());
    c.n0 = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.n0 = 41;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = SolverConfig{};
    c.points_per_dim = 1;
    EXPECT_THROW(c.validate(), InvalidArgument);
    EXPECT_EQ(parse_solver("sequential"), SolverKind::Sequential);
    EXPECT_EQ(solver_name(SolverKind::Independent), "independent");
    EXPECT_THROW(parse_solver("random"), InvalidArgument);
}

TEST(Solvers, BudgetEqualsInitialDesign) {
    auto p = BenchmarkProblem::generate(2);
    auto c = small_config();
    c.budget = c.n0;
    for (auto kind : {SolverKind::BopElites, SolverKind::Sequential, SolverKind::Independent}) {
        auto t = run_solver(kind, p, default_grid(), c);
        ASSERT_EQ(t.rows.size(), 5u);
        for (const auto& r : t.rows) {
            EXPECT_FALSE(r.active_niche.has_value());
            EXPECT_TRUE(r.hyperparams.empty());
        }
    }
}

TEST(Solvers, BudgetBeyondCandidatesRejected) {
    auto p = BenchmarkProblem::generate(2);
    auto c = small_config();
    c.points_per_dim = 10;
    c.budget = 11;
    EXPECT_THROW(run_bop_elites(p, default_grid(), c), InvalidArgument);
}

TEST(Solvers, SharedInitialDesignAndInvariants) {
    auto p = BenchmarkProblem::generate(4);
    auto c = small_config();
    auto grid = default_grid();
    std::vector<SolverTrace> traces;
    for (auto kind : {SolverKind::BopElites, SolverKind::Sequential, SolverKind::Independent})
        traces.push_back(run_solver(kind, p, grid, c));
    auto cands = discretize(p.domain(), c.points_per_dim);
    for (const auto& t : traces) {
        ASSERT_EQ(t.rows.size(), c.budget);
        std::set<std::size_t> seen;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const auto& r = t.rows[i];
            EXPECT_EQ(r.iteration, i + 1);
            EXPECT_TRUE(seen.insert(r.candidate_index).second) << "repeated candidate";
            EXPECT_EQ(r.x, cands.point(r.candidate_index));
            EXPECT_EQ(r.y, p.objective(r.x));
            EXPECT_EQ(r.niche, grid.classify(r.g).index);
            if (i > 0) EXPECT_LE(r.total_error, t.rows[i - 1].total_error);
            EXPECT_GE(r.total_error, 0.0);
            if (i >= c.n0) {
                ASSERT_EQ(r.hyperparams.size(), 2u);
                for (const auto& hp : r.hyperparams) {
                    EXPECT_GE(hp.lengthscales[0], 0.001);
                    EXPECT_LE(hp.lengthscales[0], 2.0);
                }
            }
        }
        for (std::size_t i = 0; i < c.n0; ++i) {
            EXPECT_EQ(t.rows[i].x, traces[0].rows[i].x);
            EXPECT_EQ(t.rows[i].y, traces[0].rows[i].y);
            EXPECT_EQ(t.rows[i].g, traces[0].rows[i].g);
        }
    }
    EXPECT_EQ(traces[0].solver, SolverKind::BopElites);
    EXPECT_EQ(traces[2].solver, SolverKind::Independent);
}

TEST(Solvers, Reproducible) {
    auto p = BenchmarkProblem::generate(6);
    auto c = small_config();
    for (auto kind : {SolverKind::BopElites, SolverKind::Sequential, SolverKind::Independent}) {
        auto a = run_solver(kind, p, default_grid(), c);
        auto b = run_solver(kind, p, default_grid(), c);
        EXPECT_EQ(choices(a), choices(b));
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            EXPECT_EQ(a.rows[i].total_error, b.rows[i].total_error);
            expect_same_hyperparams(a.rows[i].hyperparams, b.rows[i].hyperparams);
        }
    }
}

TEST(Solvers, SingleNicheReductions) {
    auto p = BenchmarkProblem::generate(9);
    auto c = small_config();
    NicheGrid one(std::vector<std::vector<double>>(1));
    auto bop = run_bop_elites(p, one, c);
    auto seq = run_sequential(p, one, c);
    auto ind = run_independent(p, one, c);
    EXPECT_EQ(choices(bop), choices(seq));
    EXPECT_EQ(choices(seq), choices(ind));
}

TEST(Solvers, SingleNicheMatchesPlainEiLoop) {
    // Global EI optimiser with the same models and streams, written directly.
    auto p = BenchmarkProblem::generate(10);
    auto c = small_config();
    auto bop = run_bop_elites(p, NicheGrid(std::vector<std::vector<double>>(1)), c);

    auto cands = discretize(p.domain(), c.points_per_dim);
    Dataset data(1, 1);
    std::vector<bool> used(cands.size(), false);
    double best = -1e300;
    std::vector<std::size_t> picks;
    for (auto i : initial_design(cands.size(), c)) {
        data.add(p.evaluate(cands.point(i)));
        used[i] = true;
        best = std::max(best, data.observations().back().y);
        picks.push_back(i);
    }
    for (std::size_t step = 0; step + c.n0 < c.budget; ++step) {
        auto models = train_surrogates(data, c, step + 1);
        std::size_t arg = 0;
        double top = -1.0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (used[i]) continue;
            double ei = expected_improvement(models.objective.predict(cands.point(i)), best);
            if (ei > top) {
                top = ei;
                arg = i;
            }
        }
        used[arg] = true;
        data.add(p.evaluate(cands.point(arg)));
        best = std::max(best, data.observations().back().y);
        picks.push_back(arg);
    }
    EXPECT_EQ(choices(bop), picks);
}

TEST(Solvers, RoundRobinCounts) {
    auto p = BenchmarkProblem::generate(11);
    SolverConfig c = small_config();
    c.budget = 40;
    c.restarts = 0;
    for (auto kind : {SolverKind::Sequential, SolverKind::Independent}) {
        auto t = run_solver(kind, p, default_grid(), c);
        std::map<std::size_t, int> counts;
        for (std::size_t i = c.n0; i < t.rows.size(); ++i) {
            ASSERT_TRUE(t.rows[i].active_niche.has_value());
            EXPECT_EQ(*t.rows[i].active_niche, (i - c.n0) % 5);
            ++counts[*t.rows[i].active_niche];
        }
        ASSERT_EQ(counts.size(), 5u);
        for (auto [niche, n] : counts) EXPECT_EQ(n, 7) << niche;
    }
    auto bop = run_bop_elites(p, default_grid(), c);
    for (const auto& r : bop.rows) EXPECT_FALSE(r.active_niche.has_value());
}

TEST(Solvers, IndependentDatasetsAreIsolated) {
    // Replays the independent solver with per-niche datasets built from the
    // trace: initial design plus the niche's own turns only.
    auto p = BenchmarkProblem::generate(12);
    auto c = small_config();
    c.budget = 20;
    auto grid = default_grid();
    auto t = run_independent(p, grid, c);
    auto cands = discretize(p.domain(), c.points_per_dim);

    std::vector<Dataset> own(5, Dataset(1, 1));
    std::vector<EliteArchive> elites(5, EliteArchive(grid));
    std::vector<bool> used(cands.size(), false);
    for (std::size_t i = 0; i < c.n0; ++i) {
        Observation o{t.rows[i].x, t.rows[i].y, t.rows[i].g};
        used[t.rows[i].candidate_index] = true;
        for (std::size_t k = 0; k < 5; ++k) {
            own[k].add(o);
            elites[k].update(o);
        }
    }
    for (std::size_t i = c.n0; i < t.rows.size(); ++i) {
        std::size_t k = (i - c.n0) % 5;
        auto models = train_surrogates(own[k], c, i - c.n0 + 1);
        expect_same_hyperparams(t.rows[i].hyperparams, {models.objective.hyperparams(), models.features[0].hyperparams()});
        auto pick = argmax_acquisition(
            cands.size(),
            [&](std::size_t j) {
                std::vector<Posterior> f{models.features[0].predict(cands.point(j))};
                return niche_weighted_ei(models.objective.predict(cands.point(j)), f, grid.decode(k), elites[k]);
            },
            used);
        EXPECT_EQ(pick, t.rows[i].candidate_index) << "iteration " << i + 1;
        Observation o{t.rows[i].x, t.rows[i].y, t.rows[i].g};
        used[t.rows[i].candidate_index] = true;
        own[k].add(o);
        elites[k].update(o);
    }
    // niche 0's final dataset holds the initial design plus its own 3 turns
    EXPECT_EQ(own[0].size(), c.n0 + 3);
}

TEST(Solvers, ExhaustionSurfaces) {
    // every candidate consumed: the budget equals the grid size
    fixture::FunctionProblem p([](double x) { return x; }, [](double x) { return x; });
    SolverConfig c;
    c.n0 = 2;
    c.budget = 6;
    c.points_per_dim = 6;
    c.restarts = 0;
    auto t = run_bop_elites(p, NicheGrid(std::vector<std::vector<double>>{{5.0}}), c);
    EXPECT_EQ(t.rows.size(), 6u);
    std::set<std::size_t> all;
    for (auto& r : t.rows) all.insert(r.candidate_index);
    EXPECT_EQ(all.size(), 6u);
    EXPECT_EQ(t.rows.back().total_error, 0.0);
}

TEST(Solvers, AcquisitionSweepCsv) {
    auto p = BenchmarkProblem::generate(13);
    auto c = small_config();
    auto csv = acquisition_sweep_csv(p, default_grid(), c);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "candidate,x,total,term_0,term_1,term_2,term_3,term_4");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201);
}
