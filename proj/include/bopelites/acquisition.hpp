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
#include <functional>
#include <span>
#include <vector>

#include "bopelites/archive.hpp"
#include "bopelites/gp.hpp"
#include "bopelites/niche_grid.hpp"

namespace bopelites {

/// EJIE value at one point and its per-niche summands P(x in c) EI_c(x).
struct AcquisitionScore {
    double total = 0.0;
    std::vector<double> per_niche;
};

/// E[max(f - incumbent, 0)] for f ~ N(mean, sd^2). sd below kDegenerateSd is
/// treated as zero.
double expected_improvement(const Posterior& post, double incumbent);

/// Membership probability of `niche` times EI against that niche's elite.
double niche_weighted_ei(const Posterior& objective, std::span<const Posterior> features, const NicheId& niche,
                         const EliteArchive& archive);

/// Expected joint improvement of elites from already computed posteriors.
AcquisitionScore ejie(const Posterior& objective, std::span<const Posterior> features,
                      const EliteArchive& archive);

/// Expected joint improvement of elites at x.
AcquisitionScore ejie(const Point& x, const GpModel& objective_model, std::span<const GpModel> feature_models,
                      const EliteArchive& archive);

/// Index of the best non-excluded candidate; ties go to the lowest index.
/// `excluded` is indexed by candidate (empty means nothing excluded). Throws
/// ExhaustedError when every candidate is excluded.
std::size_t argmax_acquisition(std::size_t candidate_count, const std::function<double(std::size_t)>& score,
                               const std::vector<bool>& excluded);

} // namespace bopelites
