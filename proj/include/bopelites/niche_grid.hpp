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
#include <span>
#include <string>
#include <vector>

#include "bopelites/gp.hpp"

namespace bopelites {

/// Niche identity: flat index plus the region index along each feature.
struct NicheId {
    std::size_t index = 0;
    std::vector<std::size_t> regions;

    bool operator==(const NicheId&) const = default;
};

/// Posterior sd below this is treated as zero.
inline constexpr double kDegenerateSd = 1e-9;

/// Partition of feature space into niches. Feature i is cut by a strictly
/// increasing boundary list into b_i regions (-inf, c_1), [c_1, c_2), ...,
/// [c_last, +inf); a value equal to a boundary belongs to the upper region.
/// Niches are the Cartesian product of regions, flattened row-major (the last
/// feature varies fastest).
class NicheGrid {
public:
    explicit NicheGrid(std::vector<std::vector<double>> boundaries,
                       std::vector<std::vector<std::string>> labels = {});

    std::size_t feature_count() const { return boundaries_.size(); }
    std::size_t niche_count() const { return niche_count_; }
    const std::vector<std::size_t>& region_counts() const { return region_counts_; }
    const std::vector<std::vector<double>>& boundaries() const { return boundaries_; }

    NicheId classify(std::span<const double> g) const;

    std::size_t encode(std::span<const std::size_t> regions) const;
    NicheId decode(std::size_t index) const;

    /// Human-readable label such as "Slow and Strong", when labels were given.
    std::optional<std::string> label(const NicheId& niche) const;

    /// Probability that a feature with the given posterior lies in each region
    /// of dimension `dim`.
    std::vector<double> region_probabilities(std::size_t dim, const Posterior& post) const;

    /// P(x in niche) as the product over features of the region probabilities.
    double membership_probability(std::span<const Posterior> posts, const NicheId& niche) const;

    /// Membership probabilities for every niche (outer product of the
    /// per-feature region vectors).
    std::vector<double> all_membership_probabilities(std::span<const Posterior> posts) const;

private:
    std::size_t region_of(std::size_t dim, double value) const;

    std::vector<std::vector<double>> boundaries_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::size_t> region_counts_;
    std::size_t niche_count_ = 1;
};

} // namespace bopelites
