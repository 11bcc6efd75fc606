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

#include <Eigen/Core>

namespace bopelites {

/// Returns f(x); when the second argument is non-null the gradient is written
/// there too. A non-finite return value marks x as infeasible.
using ObjectiveWithGradient = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>;

struct BoxMinimizerOptions {
    std::size_t max_iterations = 100;
    std::size_t memory = 6;
    double gradient_tolerance = 1e-6;
    double function_tolerance = 1e-10;
};

struct BoxMinimizerResult {
    Eigen::VectorXd x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Projected limited-memory BFGS over the box [lower, upper]. Variables held
/// at a bound with the gradient pointing outward are frozen for the step;
/// the line search backtracks along the projected path with an Armijo test
/// and asks for the gradient only at accepted points.
BoxMinimizerResult minimize_box(const ObjectiveWithGradient& f, Eigen::VectorXd x0, const Eigen::VectorXd& lower,
                                const Eigen::VectorXd& upper, const BoxMinimizerOptions& options = {});

} // namespace bopelites
