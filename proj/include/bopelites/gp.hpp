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

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "bopelites/domain.hpp"

namespace bopelites {

/// RBF kernel parameters: one lengthscale per input dimension plus the
/// signal variance.
struct KernelHyperparams {
    Eigen::VectorXd lengthscales;
    double signal_variance = 1.0;

    static KernelHyperparams isotropic(double lengthscale, double signal_variance, std::size_t dim = 1) {
        return {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), lengthscale), signal_variance};
    }

    std::size_t dim() const { return static_cast<std::size_t>(lengthscales.size()); }
};

struct HyperparamBounds {
    double lengthscale_lower = 0.001;
    double lengthscale_upper = 2.0;
    double variance_lower = 1e-6;
    double variance_upper = 1e4;
};

/// Predictive mean and standard deviation at one point.
struct Posterior {
    double mean = 0.0;
    double sd = 0.0;
};

/// sigma^2 exp(-sum_j (a_j - b_j)^2 / (2 l_j^2)).
double rbf_kernel(const Point& a, const Point& b, const KernelHyperparams& hp);

/// Cross-covariance matrix K(a, b) with rows of a and b as points.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelHyperparams& hp);

/// Jitter levels tried when factorising: the requested level, then x10 steps
/// from max(requested, 1e-8 sigma^2) up to 1e-2 sigma^2.
std::vector<double> jitter_schedule(double jitter, double signal_variance);

/// Noiseless GP regression model with a constant prior mean. Immutable after
/// fit, so predictions are safe to run concurrently.
class GpModel {
public:
    /// Factorises K + jitter I (escalating the jitter on failure) and caches
    /// alpha = (K + jitter I)^-1 (y - prior_mean). Throws NumericalError if no
    /// jitter level yields a positive definite matrix.
    static GpModel fit(Eigen::MatrixXd train_x, Eigen::VectorXd train_y, KernelHyperparams hp, double jitter,
                       double prior_mean = 0.0);

    Posterior predict(const Point& x) const;
    double predict_mean(const Point& x) const;
    /// Posterior variance before clamping at zero.
    double raw_variance(const Point& x) const;

    /// Predictions for every row of xs; identical to calling predict per row.
    std::vector<Posterior> predict_all(const Eigen::MatrixXd& xs) const;

    double log_marginal_likelihood() const;
    /// Gradient of the LML with respect to (log l_1, ..., log l_d, log sigma^2),
    /// holding the jitter fixed.
    Eigen::VectorXd log_marginal_likelihood_gradient() const;

    const Eigen::MatrixXd& train_x() const { return train_x_; }
    const Eigen::VectorXd& train_y() const { return train_y_; }
    const KernelHyperparams& hyperparams() const { return hp_; }
    Eigen::MatrixXd chol_factor() const { return llt_.matrixL(); }
    const Eigen::VectorXd& alpha() const { return alpha_; }
    double prior_mean() const { return prior_mean_; }
    double jitter() const { return jitter_; }
    std::size_t size() const { return static_cast<std::size_t>(train_x_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(train_x_.cols()); }

private:
    GpModel() = default;

    Eigen::VectorXd cross_covariance(const Point& x) const;

    Eigen::MatrixXd train_x_;
    Eigen::VectorXd train_y_;
    KernelHyperparams hp_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
    double prior_mean_ = 0.0;
    double jitter_ = 0.0;
};

struct TrainingOptions {
    HyperparamBounds bounds;
    std::size_t restarts = 100;
    std::uint64_t seed = 0;
    /// Jitter as a multiple of the signal variance.
    double relative_jitter = 1e-8;
    std::size_t max_iterations = 100;
};

struct TrainingResult {
    KernelHyperparams hyperparams;
    double log_likelihood = 0.0;
    std::size_t failed_starts = 0;
    /// Likelihood evaluations summed over all starts.
    std::size_t evaluations = 0;
    /// True when every start failed and the initial values were returned.
    bool fell_back = false;
};

/// Maximum-likelihood hyperparameters. The jitter is relative to the signal
/// variance, so the variance has a closed-form optimum for given lengthscales
/// and is profiled out; the bounded quasi-Newton optimiser then runs over the
/// log-lengthscales from `init` and from `restarts` starts drawn uniformly in
/// log space inside the bounds. The best LML wins, ties going to the earliest
/// start. `init.signal_variance` is only returned if every start fails.
TrainingResult train_hyperparams(const Eigen::MatrixXd& train_x, const Eigen::VectorXd& train_y,
                                 const KernelHyperparams& init, const TrainingOptions& options);

} // namespace bopelites
