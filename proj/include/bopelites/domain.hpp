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
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace bopelites {

using Point = Eigen::VectorXd;

/// Axis-aligned box [lower, upper] in R^d.
class SearchDomain {
public:
    SearchDomain(Eigen::VectorXd lower, Eigen::VectorXd upper);

    /// One-dimensional interval [lower, upper].
    static SearchDomain interval(double lower, double upper);

    std::size_t dim() const { return static_cast<std::size_t>(lower_.size()); }
    const Eigen::VectorXd& lower() const { return lower_; }
    const Eigen::VectorXd& upper() const { return upper_; }
    bool contains(const Point& x) const;

private:
    Eigen::VectorXd lower_;
    Eigen::VectorXd upper_;
};

/// One evaluated point: objective value y and feature vector g.
struct Observation {
    Point x;
    double y = 0.0;
    std::vector<double> g;
};

/// Ordered observations with a fixed input dimension and feature count.
class Dataset {
public:
    Dataset(std::size_t dim, std::size_t feature_count) : dim_(dim), feature_count_(feature_count) {}

    void add(Observation obs);

    std::size_t size() const { return observations_.size(); }
    bool empty() const { return observations_.empty(); }
    std::size_t dim() const { return dim_; }
    std::size_t feature_count() const { return feature_count_; }
    const std::vector<Observation>& observations() const { return observations_; }
    const Observation& operator[](std::size_t i) const { return observations_[i]; }

    /// n x d matrix of inputs.
    Eigen::MatrixXd inputs() const;
    Eigen::VectorXd objectives() const;
    Eigen::VectorXd features(std::size_t j) const;

private:
    std::size_t dim_;
    std::size_t feature_count_;
    std::vector<Observation> observations_;
};

/// Distinct candidate points in a stable order (one row per candidate).
class CandidateSet {
public:
    explicit CandidateSet(Eigen::MatrixXd points) : points_(std::move(points)) {}

    std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
    Point point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }
    const Eigen::MatrixXd& points() const { return points_; }

private:
    Eigen::MatrixXd points_;
};

/// Equally spaced grid with both bounds included. For d > 1 the Cartesian
/// product is returned in lexicographic order: the first dimension varies
/// slowest.
CandidateSet discretize(const SearchDomain& domain, std::size_t points_per_dim);

/// Indices of n0 distinct candidates drawn uniformly without replacement, in
/// draw order.
std::vector<std::size_t> sample_initial_indices(std::size_t candidate_count, std::size_t n0, std::uint64_t seed);

std::vector<Point> sample_initial(const CandidateSet& candidates, std::size_t n0, std::uint64_t seed);

/// Expensive black box returning an objective value and feature vector.
class Problem {
public:
    virtual ~Problem() = default;

    virtual const SearchDomain& domain() const = 0;
    virtual std::size_t feature_count() const = 0;
    virtual double objective(const Point& x) const = 0;
    virtual std::vector<double> features(const Point& x) const = 0;

    Observation evaluate(const Point& x) const { return Observation{x, objective(x), features(x)}; }
};

} // namespace bopelites
