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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "bopelites/archive.hpp"
#include "bopelites/benchmark.hpp"
#include "bopelites/errors.hpp"
#include "fixtures.hpp"

using namespace bopelites;
using fixture::pt;

namespace {

NicheGrid five() { return NicheGrid({{4.0, 8.0, 12.0, 16.0}}); }

Observation obs(double x, double y, double g) { return {pt(x), y, {g}}; }

GroundTruth truth_of(std::vector<std::optional<double>> ys) {
    GroundTruth t;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (ys[i]) t.optima.push_back(TrueOptimum{pt(double(i)), *ys[i], i});
        else t.optima.push_back(std::nullopt);
    }
    return t;
}

} // namespace

TEST(Archive, EmptyNicheAcceptsAnyValue) {
    EliteArchive a(five());
    auto u = a.update(obs(1.0, -3.0, 5.0));
    EXPECT_TRUE(u.improved);
    EXPECT_EQ(u.niche.index, 1u);
    EXPECT_EQ(a.elite_value(1), -3.0);
    EXPECT_EQ(a.filled_count(), 1u);
}

TEST(Archive, StrictImprovementRule) {
    EliteArchive a(five());
    EXPECT_TRUE(a.update(obs(1.0, 5.0, 5.0)).improved);
    auto same = a.update(obs(2.0, 5.0, 6.0));
    EXPECT_FALSE(same.improved);
    EXPECT_EQ(a.elite(1)->x[0], 1.0);
    auto better = a.update(obs(3.0, 5.1, 7.9));
    EXPECT_TRUE(better.improved);
    EXPECT_EQ(a.elite_value(1), 5.1);
    EXPECT_EQ(a.elite(1)->x[0], 3.0);
    EXPECT_FALSE(a.update(obs(4.0, 2.0, 4.0)).improved);
    EXPECT_EQ(a.elite_value(1), 5.1);
}

TEST(Archive, ElitesStayInTheirNiche) {
    EliteArchive a(five());
    std::vector<Observation> seq{obs(0, 1, 0.5), obs(1, 2, 19), obs(2, 0.5, 3.9), obs(3, 7, 4.0), obs(4, 6, 16)};
    for (auto& o : seq) a.update(o);
    for (std::size_t c = 0; c < a.niche_count(); ++c) {
        if (!a.elite(c)) continue;
        EXPECT_EQ(a.grid().classify(a.elite(c)->g).index, c);
    }
    EXPECT_EQ(a.elite_value(0), 1.0);
    EXPECT_EQ(a.elite_value(1), 7.0);
    EXPECT_EQ(a.elite_value(2), 0.0);
    EXPECT_EQ(a.elite_value(4), 6.0);
}

TEST(Archive, EliteValueDefaults) {
    EliteArchive a(five());
    EXPECT_EQ(a.elite_value(3), 0.0);
    a.update(obs(1.0, 7.3, 13.0));
    EXPECT_EQ(a.elite_value(3), 7.3);
    EliteArchive b(five(), -2.5);
    EXPECT_EQ(b.elite_value(0), -2.5);
}

TEST(Archive, NonImprovingUpdateIsIdempotent) {
    EliteArchive a(five());
    a.update(obs(1.0, 7.0, 1.0));
    auto before = a.elite(0);
    for (int i = 0; i < 3; ++i) EXPECT_FALSE(a.update(obs(2.0, 6.0, 1.0)).improved);
    EXPECT_EQ(a.elite(0)->x, before->x);
    EXPECT_EQ(a.elite(0)->y, before->y);
}

TEST(TotalError, WorkedExamples) {
    auto t = truth_of({1.0, 2.0, 3.0, 4.0, 5.0});
    EliteArchive a(five());
    a.update(obs(0, 1.0, 0));
    a.update(obs(1, 2.0, 5));
    a.update(obs(2, 3.0, 9));
    a.update(obs(3, 4.0, 13));
    EXPECT_NEAR(total_error(a, t), 5.0, 1e-12);
    a.update(obs(4, 4.3, 17));
    EXPECT_NEAR(total_error(a, t), 0.7, 1e-12);
    a.update(obs(5, 5.0, 17));
    EXPECT_EQ(total_error(a, t), 0.0);
}

TEST(TotalError, EmptyArchiveSumsOptima) {
    NicheGrid g({{4.0, 8.0}});
    auto t = truth_of({4.2, 9.1, 3.3});
    EliteArchive a(g);
    EXPECT_NEAR(total_error(a, t), 4.2 + 9.1 + 3.3, 1e-12);
    EXPECT_NEAR(total_error(a, t), 16.6, 1e-12);
}

TEST(TotalError, NegativeFirstEliteNeverRaisesError) {
    // objective dips to -1.5 somewhere; niche 1's optimum is -0.4
    NicheGrid g({{4.0, 8.0}});
    auto t = truth_of({4.2, -0.4, 3.3});
    t.lowest = -1.5;
    EliteArchive a(g);
    double before = total_error(a, t);
    EXPECT_NEAR(before, (4.2 + 1.5) + (-0.4 + 1.5) + (3.3 + 1.5), 1e-12);
    a.update(obs(1.0, -1.2, 5.0));
    double after = total_error(a, t);
    EXPECT_LE(after, before);
    EXPECT_NEAR(after, (4.2 + 1.5) + 0.8 + (3.3 + 1.5), 1e-12);
    a.update(obs(2.0, -0.4, 6.0));
    a.update(obs(3.0, 4.2, 1.0));
    a.update(obs(4.0, 3.3, 9.0));
    EXPECT_EQ(total_error(a, t), 0.0);
}

TEST(TotalError, SkipsUnreachableNiches) {
    auto t = truth_of({2.0, std::nullopt, 3.0, std::nullopt, std::nullopt});
    EXPECT_EQ(t.reachable_count(), 2u);
    EliteArchive a(five());
    EXPECT_NEAR(total_error(a, t), 5.0, 1e-12);
    a.update(obs(0, 1.0, 5.0)); // niche 1 has no ground truth
    EXPECT_NEAR(total_error(a, t), 5.0, 1e-12);
    a.update(obs(1, 2.5, 9.0));
    EXPECT_NEAR(total_error(a, t), 2.5, 1e-12);
}

TEST(TotalError, GridMismatchRejected) {
    auto t = truth_of({1.0, 2.0});
    EliteArchive a(five());
    EXPECT_THROW(total_error(a, t), InvalidArgument);
}

TEST(GroundTruth, ConstantObjective) {
    fixture::FunctionProblem p([](double) { return 5.0; }, [](double x) { return 2.0 * x; });
    auto c = discretize(p.domain(), 101);
    auto t = compute_ground_truth(p, c, five());
    ASSERT_EQ(t.optima.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
        ASSERT_TRUE(t.optima[k]);
        EXPECT_EQ(t.optima[k]->y, 5.0);
    }
    // ties keep the first candidate of each niche
    EXPECT_EQ(t.optima[0]->candidate_index, 0u);
    EXPECT_EQ(t.optima[1]->candidate_index, 20u);
    EXPECT_EQ(t.optima[4]->candidate_index, 80u);
}

TEST(GroundTruth, SingleRegionFeature) {
    fixture::FunctionProblem p([](double x) { return x; }, [](double x) { return 9.0 + 0.1 * x; });
    auto t = compute_ground_truth(p, discretize(p.domain(), 50), five());
    EXPECT_EQ(t.reachable_count(), 1u);
    ASSERT_TRUE(t.optima[2]);
    EXPECT_EQ(t.optima[2]->y, 10.0);
    EXPECT_EQ(t.optima[2]->candidate_index, 49u);
}

TEST(GroundTruth, TruthAsArchiveHasZeroError) {
    auto p = BenchmarkProblem::generate(3);
    auto c = discretize(p.domain(), 1000);
    auto grid = default_grid();
    auto t = compute_ground_truth(p, c, grid);
    EliteArchive a(grid);
    for (auto& o : t.optima)
        if (o) a.update(p.evaluate(o->x));
    EXPECT_EQ(total_error(a, t), 0.0);
}

TEST(GroundTruth, GoldenProblemZero) {
    // Second brute-force pass: evaluate every candidate directly and keep the
    // first maximum per niche.
    auto p = BenchmarkProblem::generate(0);
    auto c = discretize(p.domain(), 1000);
    auto grid = default_grid();
    auto t = compute_ground_truth(p, c, grid);

    std::vector<double> best(5, -std::numeric_limits<double>::infinity());
    std::vector<long> arg(5, -1);
    for (std::size_t i = 0; i < 1000; ++i) {
        double x = 10.0 * double(i) / 999.0;
        double f = p.objective(pt(x)), g = p.features(pt(x))[0];
        std::size_t r = (g >= 4) + (g >= 8) + (g >= 12) + (g >= 16);
        if (f > best[r]) {
            best[r] = f;
            arg[r] = long(i);
        }
    }
    for (std::size_t k = 0; k < 5; ++k) {
        ASSERT_EQ(t.optima[k].has_value(), arg[k] >= 0);
        if (!t.optima[k]) continue;
        EXPECT_NEAR(t.optima[k]->y, best[k], 1e-12);
        EXPECT_EQ(long(t.optima[k]->candidate_index), arg[k]);
    }

    // numpy dense-solve recomputation from the saved problem file (seed 0)
    const std::vector<std::pair<std::size_t, double>> golden{
        {999, 16.763385613836945}, {993, 15.788610775441986}, {782, 14.740499178200468},
        {328, 12.476643582344614}, {307, 12.072938577949037}};
    for (std::size_t k = 0; k < 5; ++k) {
        ASSERT_TRUE(t.optima[k]) << k;
        EXPECT_EQ(t.optima[k]->candidate_index, golden[k].first) << k;
        EXPECT_NEAR(t.optima[k]->y, golden[k].second, 1e-9) << k;
    }
}
