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

#include "bopelites/archive.hpp"

#include <algorithm>
#include <limits>

#include "bopelites/errors.hpp"

namespace bopelites {

EliteArchive::EliteArchive(NicheGrid grid, double f_min)
    : grid_(std::move(grid)), f_min_(f_min), elites_(grid_.niche_count()) {}

ArchiveUpdate EliteArchive::update(const Observation& obs) {
    ArchiveUpdate result;
    result.niche = grid_.classify(obs.g);
    auto& slot = elites_[result.niche.index];
    if (!slot || obs.y > slot->y) {
        slot = Elite{obs.x, obs.y, obs.g};
        result.improved = true;
    }
    return result;
}

double EliteArchive::elite_value(std::size_t niche) const {
    const auto& slot = elites_.at(niche);
    return slot ? slot->y : f_min_;
}

std::size_t EliteArchive::filled_count() const {
    std::size_t n = 0;
    for (const auto& e : elites_) {
        n += e.has_value() ? 1 : 0;
    }
    return n;
}

std::size_t GroundTruth::reachable_count() const {
    std::size_t n = 0;
    for (const auto& o : optima) {
        n += o.has_value() ? 1 : 0;
    }
    return n;
}

GroundTruth compute_ground_truth(const Problem& problem, const CandidateSet& candidates, const NicheGrid& grid) {
    GroundTruth truth;
    truth.optima.resize(grid.niche_count());
    truth.lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Point x = candidates.point(i);
        const double y = problem.objective(x);
        truth.lowest = std::min(truth.lowest, y);
        const std::size_t niche = grid.classify(problem.features(x)).index;
        auto& slot = truth.optima[niche];
        if (!slot || y > slot->y) {
            slot = TrueOptimum{x, y, i};
        }
    }
    return truth;
}

double total_error(const EliteArchive& archive, const GroundTruth& truth) {
    if (truth.optima.size() != archive.niche_count()) {
        throw InvalidArgument("archive and ground truth use different grids");
    }
    const double empty_value = std::min(archive.f_min(), truth.lowest);
    double te = 0.0;
    for (std::size_t c = 0; c < truth.optima.size(); ++c) {
        if (truth.optima[c]) {
            const auto& e = archive.elite(c);
            te += truth.optima[c]->y - (e ? e->y : empty_value);
        }
    }
    return te;
}

} // namespace bopelites
