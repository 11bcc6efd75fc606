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

#include "bopelites/benchmark.hpp"

#include <fstream>

#include "bopelites/errors.hpp"
#include "bopelites/rng.hpp"

namespace bopelites {

namespace {

constexpr std::uint64_t kObjectiveStream = 1;
constexpr std::uint64_t kFeatureStream = 2;

GeneratorGp draw_generator(std::uint64_t seed) {
    Rng rng(seed);
    GeneratorGp gen;
    for (double& a : gen.anchors) {
        a = rng.uniform(kAnchorLow, kAnchorHigh);
    }
    double mean = 0.0;
    for (double a : gen.anchors) {
        mean += a;
    }
    mean /= static_cast<double>(kAnchorCount);
    double ss = 0.0;
    for (double a : gen.anchors) {
        ss += (a - mean) * (a - mean);
    }
    gen.prior_mean = mean;
    gen.signal_variance = ss / static_cast<double>(kAnchorCount - 1);
    gen.lengthscale = 1.0;
    gen.jitter = 1e-6;
    return gen;
}

nlohmann::json generator_to_json(const GeneratorGp& gen) {
    return {{"anchors_y", gen.anchors},
            {"lengthscale", gen.lengthscale},
            {"signal_variance", gen.signal_variance},
            {"prior_mean", gen.prior_mean},
            {"jitter", gen.jitter}};
}

GeneratorGp generator_from_json(const nlohmann::json& j) {
    GeneratorGp gen;
    const auto anchors = j.at("anchors_y").get<std::vector<double>>();
    if (anchors.size() != kAnchorCount) {
        throw ParseError("expected 11 anchor values");
    }
    std::copy(anchors.begin(), anchors.end(), gen.anchors.begin());
    gen.lengthscale = j.at("lengthscale").get<double>();
    gen.signal_variance = j.at("signal_variance").get<double>();
    gen.prior_mean = j.at("prior_mean").get<double>();
    gen.jitter = j.at("jitter").get<double>();
    return gen;
}

} // namespace

GpModel fit_generator(const GeneratorGp& gen) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(kAnchorCount), 1);
    Eigen::VectorXd y(static_cast<Eigen::Index>(kAnchorCount));
    for (std::size_t i = 0; i < kAnchorCount; ++i) {
        x(static_cast<Eigen::Index>(i), 0) = static_cast<double>(i);
        y[static_cast<Eigen::Index>(i)] = gen.anchors[i];
    }
    return GpModel::fit(std::move(x), std::move(y), KernelHyperparams::isotropic(gen.lengthscale, gen.signal_variance),
                        gen.jitter, gen.prior_mean);
}

BenchmarkProblem::BenchmarkProblem(std::uint64_t seed, GeneratorGp objective, GeneratorGp feature)
    : seed_(seed),
      domain_(SearchDomain::interval(0.0, 10.0)),
      objective_gen_(objective),
      feature_gen_(feature),
      objective_model_(fit_generator(objective_gen_)),
      feature_model_(fit_generator(feature_gen_)) {}

BenchmarkProblem BenchmarkProblem::generate(std::uint64_t seed) {
    return BenchmarkProblem(seed, draw_generator(derive_seed(seed, kObjectiveStream)),
                            draw_generator(derive_seed(seed, kFeatureStream)));
}

void BenchmarkProblem::check_domain(const Point& x) const {
    if (!domain_.contains(x)) {
        throw InvalidArgument("benchmark input outside [0, 10]");
    }
}

double BenchmarkProblem::objective(const Point& x) const {
    check_domain(x);
    return objective_model_.predict_mean(x);
}

std::vector<double> BenchmarkProblem::features(const Point& x) const {
    check_domain(x);
    return {feature_model_.predict_mean(x)};
}

nlohmann::json BenchmarkProblem::to_json() const {
    return {{"format", "bopelites-problem/1"},
            {"seed", seed_},
            {"domain", {0.0, 10.0}},
            {"anchors_x", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
            {"objective", generator_to_json(objective_gen_)},
            {"feature", generator_to_json(feature_gen_)},
            {"grid", grid_to_json(default_grid())}};
}

BenchmarkProblem BenchmarkProblem::from_json(const nlohmann::json& j) {
    try {
        return BenchmarkProblem(j.at("seed").get<std::uint64_t>(), generator_from_json(j.at("objective")),
                                generator_from_json(j.at("feature")));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed problem file: ") + e.what());
    }
}

BenchmarkProblem BenchmarkProblem::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return from_json(j);
}

void BenchmarkProblem::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << to_json().dump(2) << '\n';
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

NicheGrid default_grid() {
    return NicheGrid({{4.0, 8.0, 12.0, 16.0}});
}

nlohmann::json grid_to_json(const NicheGrid& grid) {
    return {{"boundaries", grid.boundaries()}};
}

NicheGrid grid_from_json(const nlohmann::json& j) {
    try {
        return NicheGrid(j.at("boundaries").get<std::vector<std::vector<double>>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed grid: ") + e.what());
    }
}

} // namespace bopelites
