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

#include "bopelites/box_minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "bopelites/errors.hpp"

namespace bopelites {

namespace {

Eigen::VectorXd project(Eigen::VectorXd x, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
    return x.cwiseMax(lower).cwiseMin(upper);
}

// Components of the gradient that may move without leaving the box.
Eigen::VectorXd free_mask(const Eigen::VectorXd& x, const Eigen::VectorXd& g, const Eigen::VectorXd& lower,
                          const Eigen::VectorXd& upper) {
    Eigen::VectorXd mask = Eigen::VectorXd::Ones(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if ((x[i] <= lower[i] && g[i] > 0.0) || (x[i] >= upper[i] && g[i] < 0.0)) {
            mask[i] = 0.0;
        }
    }
    return mask;
}

} // namespace

BoxMinimizerResult minimize_box(const ObjectiveWithGradient& f, Eigen::VectorXd x0, const Eigen::VectorXd& lower,
                                const Eigen::VectorXd& upper, const BoxMinimizerOptions& options) {
    if (x0.size() != lower.size() || x0.size() != upper.size()) {
        throw InvalidArgument("minimize_box: dimension mismatch");
    }
    BoxMinimizerResult result;
    Eigen::VectorXd x = project(std::move(x0), lower, upper);
    Eigen::VectorXd g(x.size());
    double fx = f(x, &g);
    ++result.evaluations;
    if (!std::isfinite(fx)) {
        result.x = x;
        result.value = std::numeric_limits<double>::infinity();
        return result;
    }

    std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> history;
    Eigen::VectorXd g_new(x.size());

    for (; result.iterations < options.max_iterations; ++result.iterations) {
        const Eigen::VectorXd mask = free_mask(x, g, lower, upper);
        const Eigen::VectorXd pg = g.cwiseProduct(mask);
        if (pg.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
            result.converged = true;
            break;
        }

        // two-loop recursion restricted to the free variables
        Eigen::VectorXd q = pg;
        std::vector<double> alphas(history.size());
        for (std::size_t k = history.size(); k-- > 0;) {
            const auto& [s, y] = history[k];
            const double rho = 1.0 / y.dot(s);
            alphas[k] = rho * s.dot(q);
            q -= alphas[k] * y;
        }
        if (!history.empty()) {
            const auto& [s, y] = history.back();
            q *= s.dot(y) / y.dot(y);
        }
        for (std::size_t k = 0; k < history.size(); ++k) {
            const auto& [s, y] = history[k];
            const double rho = 1.0 / y.dot(s);
            const double beta = rho * y.dot(q);
            q += (alphas[k] - beta) * s;
        }
        Eigen::VectorXd direction = -q.cwiseProduct(mask);
        if (direction.dot(pg) >= 0.0) {
            history.clear();
            direction = -pg;
        }
        if (history.empty()) {
            // first step: unit-length steepest descent
            direction /= std::max(1.0, direction.norm());
        }

        double step = 1.0;
        bool accepted = false;
        Eigen::VectorXd x_new;
        double f_new = 0.0;
        for (int ls = 0; ls < 40; ++ls) {
            x_new = project(x + step * direction, lower, upper);
            f_new = f(x_new, nullptr);
            ++result.evaluations;
            const double slope = g.dot(x_new - x);
            if (std::isfinite(f_new) && f_new <= fx + 1e-4 * slope) {
                accepted = true;
                break;
            }
            // minimiser of the quadratic through f(x), its slope and f_new,
            // kept inside [0.1, 0.5] of the current step
            double shrink = 0.5;
            if (std::isfinite(f_new) && slope < 0.0) {
                const double curvature = f_new - fx - slope;
                if (curvature > 0.0) {
                    shrink = std::clamp(-slope / (2.0 * curvature), 0.1, 0.5);
                }
            } else if (!std::isfinite(f_new)) {
                shrink = 0.1;
            }
            step *= shrink;
        }
        if (!accepted) {
            if (!history.empty()) {
                history.clear();
                continue;
            }
            break;
        }

        f_new = f(x_new, &g_new);
        if (!std::isfinite(f_new)) {
            break;
        }
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g_new - g;
        const double f_change = fx - f_new;
        x = x_new;
        g = g_new;
        fx = f_new;
        if (s.dot(y) > 1e-12 * y.squaredNorm()) {
            history.emplace_back(s, y);
            if (history.size() > options.memory) {
                history.pop_front();
            }
        }
        if (f_change <= options.function_tolerance * (1.0 + std::abs(fx))) {
            result.converged = true;
            ++result.iterations;
            break;
        }
    }
    result.x = x;
    result.value = fx;
    return result;
}

} // namespace bopelites
