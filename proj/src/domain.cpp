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

#include "bopelites/domain.hpp"

#include <numeric>
#include <string>

#include "bopelites/errors.hpp"
#include "bopelites/rng.hpp"

namespace bopelites {

SearchDomain::SearchDomain(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() == 0 || lower_.size() != upper_.size()) {
        throw InvalidArgument("search domain bounds must be non-empty and of equal length");
    }
    for (Eigen::Index j = 0; j < lower_.size(); ++j) {
        if (!(lower_[j] < upper_[j])) {
            throw InvalidArgument("search domain requires lower < upper in dimension " + std::to_string(j));
        }
    }
}

SearchDomain SearchDomain::interval(double lower, double upper) {
    return SearchDomain(Eigen::VectorXd::Constant(1, lower), Eigen::VectorXd::Constant(1, upper));
}

bool SearchDomain::contains(const Point& x) const {
    if (x.size() != lower_.size()) {
        return false;
    }
    return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
}

void Dataset::add(Observation obs) {
    if (static_cast<std::size_t>(obs.x.size()) != dim_) {
        throw InvalidArgument("observation dimension mismatch");
    }
    if (obs.g.size() != feature_count_) {
        throw InvalidArgument("observation feature count mismatch");
    }
    observations_.push_back(std::move(obs));
}

Eigen::MatrixXd Dataset::inputs() const {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < size(); ++i) {
        x.row(static_cast<Eigen::Index>(i)) = observations_[i].x.transpose();
    }
    return x;
}

Eigen::VectorXd Dataset::objectives() const {
    Eigen::VectorXd y(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
        y[static_cast<Eigen::Index>(i)] = observations_[i].y;
    }
    return y;
}

Eigen::VectorXd Dataset::features(std::size_t j) const {
    Eigen::VectorXd g(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
        g[static_cast<Eigen::Index>(i)] = observations_[i].g.at(j);
    }
    return g;
}

CandidateSet discretize(const SearchDomain& domain, std::size_t points_per_dim) {
    if (points_per_dim < 2) {
        throw InvalidArgument("discretize needs at least 2 points per dimension");
    }
    const std::size_t d = domain.dim();
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j) {
        total *= points_per_dim;
    }
    const auto steps = static_cast<double>(points_per_dim - 1);
    Eigen::MatrixXd points(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(d));
    for (std::size_t row = 0; row < total; ++row) {
        std::size_t rem = row;
        for (std::size_t jj = d; jj-- > 0;) {
            const std::size_t k = rem % points_per_dim;
            rem /= points_per_dim;
            const auto j = static_cast<Eigen::Index>(jj);
            const double lo = domain.lower()[j];
            const double hi = domain.upper()[j];
            // endpoints are reproduced exactly
            double v = lo + (hi - lo) * (static_cast<double>(k) / steps);
            if (k == points_per_dim - 1) {
                v = hi;
            }
            points(static_cast<Eigen::Index>(row), j) = v;
        }
    }
    return CandidateSet(std::move(points));
}

std::vector<std::size_t> sample_initial_indices(std::size_t candidate_count, std::size_t n0, std::uint64_t seed) {
    if (n0 > candidate_count) {
        throw InvalidArgument("cannot draw " + std::to_string(n0) + " initial points from " +
                              std::to_string(candidate_count) + " candidates");
    }
    std::vector<std::size_t> perm(candidate_count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    // partial Fisher-Yates
    for (std::size_t i = 0; i < n0; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(candidate_count - i));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(n0);
    return perm;
}

std::vector<Point> sample_initial(const CandidateSet& candidates, std::size_t n0, std::uint64_t seed) {
    std::vector<Point> out;
    for (std::size_t idx : sample_initial_indices(candidates.size(), n0, seed)) {
        out.push_back(candidates.point(idx));
    }
    return out;
}

} // namespace bopelites
