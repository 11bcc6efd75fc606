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
#include <optional>
#include <vector>

#include "bopelites/domain.hpp"
#include "bopelites/niche_grid.hpp"

namespace bopelites {

struct Elite {
    Point x;
    double y = 0.0;
    std::vector<double> g;
};

struct ArchiveUpdate {
    bool improved = false;
    NicheId niche;
};

/// Best observation per niche. An empty niche is valued at f_min.
class EliteArchive {
public:
    explicit EliteArchive(NicheGrid grid, double f_min = 0.0);

    /// Stores obs if its niche (from the observed features) is empty or obs.y
    /// strictly beats the incumbent.
    ArchiveUpdate update(const Observation& obs);

    double elite_value(std::size_t niche) const;
    const std::optional<Elite>& elite(std::size_t niche) const { return elites_.at(niche); }
    std::size_t niche_count() const { return elites_.size(); }
    std::size_t filled_count() const;
    double f_min() const { return f_min_; }
    const NicheGrid& grid() const { return grid_; }

private:
    NicheGrid grid_;
    double f_min_;
    std::vector<std::optional<Elite>> elites_;
};

struct TrueOptimum {
    Point x;
    double y = 0.0;
    std::size_t candidate_index = 0;
};

/// Per-niche optimum over the candidate set; empty for niches no candidate
/// reaches.
struct GroundTruth {
    std::vector<std::optional<TrueOptimum>> optima;
    /// Lowest objective over all candidates.
    double lowest = 0.0;

    std::size_t reachable_count() const;
};

/// Exhaustive search over the candidates. Ties keep the lowest index.
GroundTruth compute_ground_truth(const Problem& problem, const CandidateSet& candidates, const NicheGrid& grid);

/// Sum over reachable niches of y* minus the archive's elite value. Empty
/// niches count at min(f_min, truth.lowest) so a negative first elite never
/// raises the error.
double total_error(const EliteArchive& archive, const GroundTruth& truth);

} // namespace bopelites
