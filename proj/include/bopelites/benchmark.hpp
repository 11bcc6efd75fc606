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

#include <array>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "bopelites/domain.hpp"
#include "bopelites/gp.hpp"
#include "bopelites/niche_grid.hpp"

namespace bopelites {

inline constexpr std::size_t kAnchorCount = 11;
inline constexpr double kAnchorLow = 0.0;
inline constexpr double kAnchorHigh = 20.0;

/// Settings of the GP whose posterior mean realises one benchmark function.
struct GeneratorGp {
    std::array<double, kAnchorCount> anchors{}; // y at x = 0, 1, ..., 10
    double lengthscale = 1.0;
    double signal_variance = 1.0;
    double prior_mean = 0.0;
    double jitter = 1e-6;
};

/// Random 1-D test problem on [0, 10]: objective and single feature are
/// posterior means of GPs fitted to 11 uniform anchors in [0, 20].
class BenchmarkProblem final : public Problem {
public:
    BenchmarkProblem(std::uint64_t seed, GeneratorGp objective, GeneratorGp feature);

    /// Anchors from independent sub-streams of `seed`; lengthscale 1, signal
    /// variance and prior mean set to the sample variance and mean of the
    /// anchors, jitter 1e-6.
    static BenchmarkProblem generate(std::uint64_t seed);

    static BenchmarkProblem from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static BenchmarkProblem load(const std::string& path);
    void save(const std::string& path) const;

    const SearchDomain& domain() const override { return domain_; }
    std::size_t feature_count() const override { return 1; }
    double objective(const Point& x) const override;
    std::vector<double> features(const Point& x) const override;

    std::uint64_t seed() const { return seed_; }
    const GeneratorGp& objective_generator() const { return objective_gen_; }
    const GeneratorGp& feature_generator() const { return feature_gen_; }
    const GpModel& objective_model() const { return objective_model_; }
    const GpModel& feature_model() const { return feature_model_; }

private:
    void check_domain(const Point& x) const;

    std::uint64_t seed_;
    SearchDomain domain_;
    GeneratorGp objective_gen_;
    GeneratorGp feature_gen_;
    GpModel objective_model_;
    GpModel feature_model_;
};

/// Fits the generator GP described by `gen`.
GpModel fit_generator(const GeneratorGp& gen);

/// One feature cut at {4, 8, 12, 16}: five niches over [0, 20].
NicheGrid default_grid();

nlohmann::json grid_to_json(const NicheGrid& grid);
NicheGrid grid_from_json(const nlohmann::json& j);

} // namespace bopelites
