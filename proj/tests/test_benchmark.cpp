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
#include <filesystem>

#include <gtest/gtest.h>

#include "bopelites/archive.hpp"
#include "bopelites/benchmark.hpp"
#include "bopelites/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bopelites;
using fixture::pt;

TEST(Benchmark, DeterministicGeneration) {
    auto a = BenchmarkProblem::generate(17), b = BenchmarkProblem::generate(17);
    EXPECT_EQ(a.objective_generator().anchors, b.objective_generator().anchors);
    EXPECT_EQ(a.feature_generator().anchors, b.feature_generator().anchors);
    EXPECT_EQ(a.objective_generator().signal_variance, b.objective_generator().signal_variance);
    EXPECT_EQ(a.objective(pt(3.21)), b.objective(pt(3.21)));
    EXPECT_EQ(a.seed(), 17u);
    EXPECT_NE(a.objective_generator().anchors, BenchmarkProblem::generate(18).objective_generator().anchors);
}

TEST(Benchmark, AnchorsAndHyperparameters) {
    auto p = BenchmarkProblem::generate(5);
    for (const auto* gen : {&p.objective_generator(), &p.feature_generator()}) {
        double sum = 0.0;
        for (double y : gen->anchors) {
            EXPECT_GE(y, 0.0);
            EXPECT_LE(y, 20.0);
            sum += y;
        }
        double mean = sum / 11.0, ss = 0.0;
        for (double y : gen->anchors) ss += (y - mean) * (y - mean);
        EXPECT_DOUBLE_EQ(gen->prior_mean, mean);
        EXPECT_DOUBLE_EQ(gen->signal_variance, ss / 10.0);
        EXPECT_EQ(gen->lengthscale, 1.0);
        EXPECT_EQ(gen->jitter, 1e-6);
    }
    // objective and feature are separate draws
    for (std::size_t i = 0; i < kAnchorCount; ++i)
        EXPECT_NE(p.objective_generator().anchors[i], p.feature_generator().anchors[i]);
    auto m = p.objective_model();
    for (Eigen::Index i = 0; i < 11; ++i) EXPECT_EQ(m.train_x()(i, 0), double(i));
}

TEST(Benchmark, AnchorMeanOverThousandProblems) {
    double sum = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        auto p = BenchmarkProblem::generate(s);
        for (double y : p.objective_generator().anchors) sum += y;
        for (double y : p.feature_generator().anchors) sum += y;
    }
    EXPECT_NEAR(sum / 22000.0, 10.0, 0.5);
}

TEST(Benchmark, InterpolatesAnchors) {
    auto p = BenchmarkProblem::generate(8);
    for (int i = 0; i <= 10; ++i) {
        EXPECT_NEAR(p.objective(pt(i)), p.objective_generator().anchors[i], 1e-4);
        EXPECT_NEAR(p.features(pt(i))[0], p.feature_generator().anchors[i], 1e-4);
    }
}

TEST(Benchmark, LipschitzBoundFromKernel) {
    // |m'(x)| <= sigma^2 e^{-1/2} / l * sum |alpha_i|
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto p = BenchmarkProblem::generate(s);
        const auto& m = p.objective_model();
        double bound = m.hyperparams().signal_variance * std::exp(-0.5) / m.hyperparams().lengthscales[0] *
                       m.alpha().cwiseAbs().sum();
        EXPECT_LE(std::abs(p.objective(pt(5.0)) - p.objective(pt(5.001))), 0.001 * bound);
    }
}

TEST(Benchmark, MatchesDenseOracle) {
    auto p = BenchmarkProblem::generate(21);
    Eigen::MatrixXd x(11, 1);
    Eigen::VectorXd yo(11), yg(11);
    for (int i = 0; i < 11; ++i) {
        x(i, 0) = i;
        yo[i] = p.objective_generator().anchors[i];
        yg[i] = p.feature_generator().anchors[i];
    }
    const auto& go = p.objective_generator();
    const auto& gf = p.feature_generator();
    oracle::Dense fo(x, yo, Eigen::VectorXd::Constant(1, 1.0), go.signal_variance, go.jitter, go.prior_mean);
    oracle::Dense ff(x, yg, Eigen::VectorXd::Constant(1, 1.0), gf.signal_variance, gf.jitter, gf.prior_mean);
    auto cands = discretize(p.domain(), 1000);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        EXPECT_NEAR(p.objective(cands.point(i)), fo.mean(cands.point(i)), 1e-10);
        EXPECT_NEAR(p.features(cands.point(i))[0], ff.mean(cands.point(i)), 1e-10);
    }
}

TEST(Benchmark, RejectsOutOfDomain) {
    auto p = BenchmarkProblem::generate(1);
    EXPECT_THROW(p.objective(pt(-0.01)), InvalidArgument);
    EXPECT_THROW(p.features(pt(10.01)), InvalidArgument);
    EXPECT_THROW(p.objective(Point::Zero(2)), InvalidArgument);
    EXPECT_NO_THROW(p.objective(pt(10.0)));
}

TEST(Benchmark, EnvelopeOverThousandProblems) {
    auto cands = discretize(SearchDomain::interval(0.0, 10.0), 201);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        auto p = BenchmarkProblem::generate(s);
        for (std::size_t i = 0; i < cands.size(); ++i) worst = std::max(worst, std::abs(p.objective(cands.point(i))));
    }
    EXPECT_LE(worst, 40.0);
}

TEST(Benchmark, SomeSeedMissesANiche) {
    auto grid = default_grid();
    int missing = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto p = BenchmarkProblem::generate(s);
        auto t = compute_ground_truth(p, discretize(p.domain(), 1000), grid);
        missing += t.reachable_count() < grid.niche_count();
    }
    EXPECT_GE(missing, 1);
}

TEST(Benchmark, JsonRoundTripIsBitExact) {
    auto p = BenchmarkProblem::generate(77);
    auto q = BenchmarkProblem::from_json(nlohmann::json::parse(p.to_json().dump()));
    EXPECT_EQ(q.seed(), 77u);
    for (double x = 0.0; x <= 10.0; x += 0.123) {
        EXPECT_EQ(p.objective(pt(x)), q.objective(pt(x)));
        EXPECT_EQ(p.features(pt(x)), q.features(pt(x)));
    }
    auto path = std::filesystem::temp_directory_path() / "bopelites_problem_rt.json";
    p.save(path.string());
    auto r = BenchmarkProblem::load(path.string());
    EXPECT_EQ(p.objective(pt(4.56)), r.objective(pt(4.56)));
    std::filesystem::remove(path);
}

TEST(Benchmark, BadJsonRejected) {
    EXPECT_THROW(BenchmarkProblem::from_json(nlohmann::json::object()), ParseError);
    auto j = BenchmarkProblem::generate(1).to_json();
    j["objective"]["anchors_y"].erase(0);
    EXPECT_THROW(BenchmarkProblem::from_json(j), ParseError);
    EXPECT_THROW(BenchmarkProblem::load("/nonexistent/dir/p.json"), IoError);
}

TEST(DefaultGrid, FiveNiches) {
    auto g = default_grid();
    EXPECT_EQ(g.niche_count(), 5u);
    std::vector<double> top{20.0}, edge{4.0};
    EXPECT_EQ(g.classify(top).index, 4u);
    EXPECT_EQ(g.classify(edge).index, 1u);
    auto back = grid_from_json(grid_to_json(g));
    EXPECT_EQ(back.boundaries(), g.boundaries());
}
