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

#include "bopelites/niche_grid.hpp"

#include <algorithm>
#include <cmath>

#include "bopelites/errors.hpp"
#include "bopelites/normal.hpp"

namespace bopelites {

NicheGrid::NicheGrid(std::vector<std::vector<double>> boundaries, std::vector<std::vector<std::string>> labels)
    : boundaries_(std::move(boundaries)), labels_(std::move(labels)) {
    if (boundaries_.empty()) {
        throw InvalidArgument("niche grid needs at least one feature");
    }
    for (std::size_t i = 0; i < boundaries_.size(); ++i) {
        const auto& b = boundaries_[i];
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (!std::isfinite(b[k]) || (k > 0 && !(b[k - 1] < b[k]))) {
                throw InvalidArgument("boundaries of feature " + std::to_string(i) +
                                      " must be finite and strictly increasing");
            }
        }
        region_counts_.push_back(b.size() + 1);
        niche_count_ *= b.size() + 1;
    }
    if (!labels_.empty()) {
        if (labels_.size() != boundaries_.size()) {
            throw InvalidArgument("labels must be given for every feature");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].size() != region_counts_[i]) {
                throw InvalidArgument("feature " + std::to_string(i) + " needs one label per region");
            }
        }
    }
}

std::size_t NicheGrid::region_of(std::size_t dim, double value) const {
    const auto& b = boundaries_[dim];
    return static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), value) - b.begin());
}

NicheId NicheGrid::classify(std::span<const double> g) const {
    if (g.size() != feature_count()) {
        throw InvalidArgument("feature vector has " + std::to_string(g.size()) + " entries, grid expects " +
                              std::to_string(feature_count()));
    }
    NicheId id;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) {
            throw InvalidArgument("non-finite feature value");
        }
        id.regions.push_back(region_of(i, g[i]));
    }
    id.index = encode(id.regions);
    return id;
}

std::size_t NicheGrid::encode(std::span<const std::size_t> regions) const {
    if (regions.size() != feature_count()) {
        throw InvalidArgument("region vector length mismatch");
    }
    std::size_t index = 0;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (regions[i] >= region_counts_[i]) {
            throw InvalidArgument("region index out of range");
        }
        index = index * region_counts_[i] + regions[i];
    }
    return index;
}

NicheId NicheGrid::decode(std::size_t index) const {
    if (index >= niche_count_) {
        throw InvalidArgument("niche index out of range");
    }
    NicheId id;
    id.index = index;
    id.regions.resize(feature_count());
    for (std::size_t i = feature_count(); i-- > 0;) {
        id.regions[i] = index % region_counts_[i];
        index /= region_counts_[i];
    }
    return id;
}

std::optional<std::string> NicheGrid::label(const NicheId& niche) const {
    if (labels_.empty()) {
        return std::nullopt;
    }
    std::string out;
    for (std::size_t i = 0; i < niche.regions.size(); ++i) {
        if (i > 0) {
            out += " and ";
        }
        out += labels_[i].at(niche.regions[i]);
    }
    return out;
}

std::vector<double> NicheGrid::region_probabilities(std::size_t dim, const Posterior& post) const {
    const auto& b = boundaries_.at(dim);
    std::vector<double> probs(b.size() + 1, 0.0);
    if (post.sd < kDegenerateSd) {
        probs[region_of(dim, post.mean)] = 1.0;
        return probs;
    }
    // P(b_l <= g < b_u) = Phi((b_u - mean)/sd) - Phi((b_l - mean)/sd)
    double lower_cdf = 0.0;
    for (std::size_t k = 0; k <= b.size(); ++k) {
        const double upper_cdf = k < b.size() ? normal_cdf((b[k] - post.mean) / post.sd) : 1.0;
        probs[k] = std::max(upper_cdf - lower_cdf, 0.0);
        lower_cdf = upper_cdf;
    }
    return probs;
}

double NicheGrid::membership_probability(std::span<const Posterior> posts, const NicheId& niche) const {
    if (posts.size() != feature_count() || niche.regions.size() != feature_count()) {
        throw InvalidArgument("membership_probability needs one posterior per feature");
    }
    double p = 1.0;
    for (std::size_t i = 0; i < posts.size(); ++i) {
        p *= region_probabilities(i, posts[i])[niche.regions[i]];
    }
    return p;
}

std::vector<double> NicheGrid::all_membership_probabilities(std::span<const Posterior> posts) const {
    if (posts.size() != feature_count()) {
        throw InvalidArgument("all_membership_probabilities needs one posterior per feature");
    }
    std::vector<double> out{1.0};
    for (std::size_t i = 0; i < posts.size(); ++i) {
        const std::vector<double> region = region_probabilities(i, posts[i]);
        std::vector<double> next;
        next.reserve(out.size() * region.size());
        for (double p : out) {
            for (double q : region) {
                next.push_back(p * q);
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace bopelites
