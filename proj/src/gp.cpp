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

#include "bopelites/gp.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "bopelites/box_minimizer.hpp"
#include "bopelites/errors.hpp"
#include "bopelites/rng.hpp"

namespace bopelites {

namespace {

void check_dim(Eigen::Index a, Eigen::Index b) {
    if (a != b) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

bool factorise(const Eigen::MatrixXd& k, double jitter, Eigen::LLT<Eigen::MatrixXd>& llt) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    llt.compute(kj);
    if (llt.info() != Eigen::Success) {
        return false;
    }
    const auto diag = llt.matrixLLT().diagonal();
    return diag.allFinite() && (diag.array() > 0.0).all();
}

// Squared coordinate differences, one n x n matrix per input dimension.
std::vector<Eigen::MatrixXd> pairwise_sq_diffs(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows();
    std::vector<Eigen::MatrixXd> out;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        Eigen::MatrixXd d(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                const double diff = x(a, j) - x(b, j);
                d(a, b) = diff * diff;
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace

double rbf_kernel(const Point& a, const Point& b, const KernelHyperparams& hp) {
    check_dim(a.size(), b.size());
    check_dim(a.size(), hp.lengthscales.size());
    double r2 = 0.0;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        const double diff = (a[j] - b[j]) / hp.lengthscales[j];
        r2 += diff * diff;
    }
    return hp.signal_variance * std::exp(-0.5 * r2);
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const KernelHyperparams& hp) {
    check_dim(a.cols(), b.cols());
    check_dim(a.cols(), hp.lengthscales.size());
    Eigen::MatrixXd k(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index l = 0; l < b.rows(); ++l) {
            double r2 = 0.0;
            for (Eigen::Index j = 0; j < a.cols(); ++j) {
                const double diff = (a(i, j) - b(l, j)) / hp.lengthscales[j];
                r2 += diff * diff;
            }
            k(i, l) = hp.signal_variance * std::exp(-0.5 * r2);
        }
    }
    return k;
}

std::vector<double> jitter_schedule(double jitter, double signal_variance) {
    std::vector<double> levels{jitter};
    const double cap = 1e-2 * signal_variance * (1.0 + 1e-9);
    double level = std::max(jitter, 1e-8 * signal_variance);
    if (level == jitter) {
        level *= 10.0;
    }
    for (; level <= cap; level *= 10.0) {
        levels.push_back(level);
    }
    return levels;
}

GpModel GpModel::fit(Eigen::MatrixXd train_x, Eigen::VectorXd train_y, KernelHyperparams hp, double jitter,
                     double prior_mean) {
    if (train_x.rows() == 0) {
        throw InvalidArgument("GP fit needs at least one observation");
    }
    check_dim(train_x.rows(), train_y.size());
    check_dim(train_x.cols(), hp.lengthscales.size());
    if (!(hp.signal_variance > 0.0) || !(hp.lengthscales.array() > 0.0).all()) {
        throw InvalidArgument("kernel hyperparameters must be positive");
    }
    if (!(jitter >= 0.0)) {
        throw InvalidArgument("jitter must be non-negative");
    }
    for (Eigen::Index a = 0; a < train_x.rows(); ++a) {
        for (Eigen::Index b = a + 1; b < train_x.rows(); ++b) {
            if (train_x.row(a) == train_x.row(b)) {
                throw InvalidArgument("duplicate training inputs at rows " + std::to_string(a) + " and " +
                                      std::to_string(b));
            }
        }
    }

    GpModel model;
    model.train_x_ = std::move(train_x);
    model.train_y_ = std::move(train_y);
    model.hp_ = std::move(hp);
    model.prior_mean_ = prior_mean;

    const Eigen::MatrixXd k = kernel_matrix(model.train_x_, model.train_x_, model.hp_);
    const std::vector<double> levels = jitter_schedule(jitter, model.hp_.signal_variance);
    for (double level : levels) {
        if (factorise(k, level, model.llt_)) {
            model.jitter_ = level;
            model.alpha_ = model.llt_.solve((model.train_y_.array() - prior_mean).matrix());
            return model;
        }
    }
    std::ostringstream msg;
    msg << "Cholesky factorisation failed at jitter levels";
    for (double level : levels) {
        msg << ' ' << level;
    }
    throw NumericalError(msg.str(), levels);
}

Eigen::VectorXd GpModel::cross_covariance(const Point& x) const {
    check_dim(x.size(), train_x_.cols());
    Eigen::VectorXd k(train_x_.rows());
    for (Eigen::Index i = 0; i < train_x_.rows(); ++i) {
        double r2 = 0.0;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double diff = (x[j] - train_x_(i, j)) / hp_.lengthscales[j];
            r2 += diff * diff;
        }
        k[i] = hp_.signal_variance * std::exp(-0.5 * r2);
    }
    return k;
}

double GpModel::predict_mean(const Point& x) const {
    return prior_mean_ + cross_covariance(x).dot(alpha_);
}

double GpModel::raw_variance(const Point& x) const {
    const Eigen::VectorXd k = cross_covariance(x);
    const Eigen::VectorXd v = llt_.matrixL().solve(k);
    return hp_.signal_variance - v.squaredNorm();
}

Posterior GpModel::predict(const Point& x) const {
    const Eigen::VectorXd k = cross_covariance(x);
    const double mean = prior_mean_ + k.dot(alpha_);
    const Eigen::VectorXd v = llt_.matrixL().solve(k);
    const double var = hp_.signal_variance - v.squaredNorm();
    return {mean, std::sqrt(std::max(var, 0.0))};
}

std::vector<Posterior> GpModel::predict_all(const Eigen::MatrixXd& xs) const {
    std::vector<Posterior> out;
    out.reserve(static_cast<std::size_t>(xs.rows()));
    for (Eigen::Index i = 0; i < xs.rows(); ++i) {
        out.push_back(predict(xs.row(i).transpose()));
    }
    return out;
}

double GpModel::log_marginal_likelihood() const {
    const Eigen::VectorXd centred = train_y_.array() - prior_mean_;
    const double n = static_cast<double>(train_y_.size());
    const double log_det = 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
    return -0.5 * centred.dot(alpha_) - 0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

Eigen::VectorXd GpModel::log_marginal_likelihood_gradient() const {
    const Eigen::Index n = train_x_.rows();
    const Eigen::MatrixXd k = kernel_matrix(train_x_, train_x_, hp_);
    const Eigen::MatrixXd k_inv = llt_.solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd w = alpha_ * alpha_.transpose() - k_inv;
    const auto sq = pairwise_sq_diffs(train_x_);
    Eigen::VectorXd grad(train_x_.cols() + 1);
    for (Eigen::Index j = 0; j < train_x_.cols(); ++j) {
        const double l2 = hp_.lengthscales[j] * hp_.lengthscales[j];
        grad[j] = 0.5 * (w.array() * k.array() * sq[static_cast<std::size_t>(j)].array()).sum() / l2;
    }
    grad[train_x_.cols()] = 0.5 * (w.array() * k.array()).sum();
    return grad;
}

namespace {

// Negative LML in log-lengthscale space with the signal variance profiled out.
// With K = s2 (R + eps I) the LML is concave in log s2 and peaks at
// s2 = y'(R + eps I)^-1 y / n, clamped into the bounds. By the envelope
// theorem the gradient with respect to log l_j is the partial derivative at
// that s2.
class ProfiledNegativeLogLikelihood {
public:
    ProfiledNegativeLogLikelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double relative_jitter,
                                  const HyperparamBounds& bounds)
        : y_(y), sq_(pairwise_sq_diffs(x)), relative_jitter_(relative_jitter), bounds_(bounds), n_(x.rows()) {}

    double operator()(const Eigen::VectorXd& z, Eigen::VectorXd* grad) const {
        double unused = 0.0;
        return evaluate(z, grad, unused);
    }

    double evaluate(const Eigen::VectorXd& z, Eigen::VectorXd* grad, double& variance) const {
        const auto d = static_cast<Eigen::Index>(sq_.size());
        Eigen::VectorXd inv_l2(d);
        for (Eigen::Index j = 0; j < d; ++j) {
            inv_l2[j] = std::exp(-2.0 * z[j]);
        }
        // unit-variance kernel, lower triangle only
        Eigen::MatrixXd r(n_, n_);
        for (Eigen::Index b = 0; b < n_; ++b) {
            r(b, b) = 1.0;
            for (Eigen::Index a = b + 1; a < n_; ++a) {
                double s = 0.0;
                for (Eigen::Index j = 0; j < d; ++j) {
                    s += sq_[static_cast<std::size_t>(j)](a, b) * inv_l2[j];
                }
                r(a, b) = std::exp(-0.5 * s);
            }
        }

        Eigen::LLT<Eigen::MatrixXd> llt;
        bool ok = false;
        for (double level : jitter_schedule(relative_jitter_, 1.0)) {
            Eigen::MatrixXd rj = r;
            rj.diagonal().array() += level;
            llt.compute(rj.selfadjointView<Eigen::Lower>());
            const auto diag = llt.matrixLLT().diagonal();
            if (llt.info() == Eigen::Success && diag.allFinite() && (diag.array() > 0.0).all()) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            return std::numeric_limits<double>::infinity();
        }
        const auto n = static_cast<double>(n_);
        const Eigen::VectorXd beta = llt.solve(y_);
        const double quad = y_.dot(beta);
        variance = std::clamp(quad / n, bounds_.variance_lower, bounds_.variance_upper);
        const double log_det_r = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
        const double lml = -0.5 * quad / variance - 0.5 * log_det_r - 0.5 * n * std::log(variance) -
                           0.5 * n * std::log(2.0 * std::numbers::pi);
        if (!std::isfinite(lml)) {
            return std::numeric_limits<double>::infinity();
        }
        if (grad == nullptr) {
            return -lml;
        }

        // R^-1 = L^-T L^-1 from the triangular inverse
        const Eigen::MatrixXd l_inv = llt.matrixL().solve(Eigen::MatrixXd::Identity(n_, n_));
        Eigen::MatrixXd r_inv = Eigen::MatrixXd::Zero(n_, n_);
        r_inv.selfadjointView<Eigen::Lower>().rankUpdate(l_inv.transpose());
        grad->setZero(d);
        // strictly lower triangle, doubled; the diagonal of dR vanishes
        for (Eigen::Index b = 0; b < n_; ++b) {
            for (Eigen::Index a = b + 1; a < n_; ++a) {
                const double w = beta[a] * beta[b] / variance - r_inv(a, b);
                const double wr = w * r(a, b);
                for (Eigen::Index j = 0; j < d; ++j) {
                    (*grad)[j] -= wr * sq_[static_cast<std::size_t>(j)](a, b) * inv_l2[j];
                }
            }
        }
        if (!grad->allFinite()) {
            return std::numeric_limits<double>::infinity();
        }
        return -lml;
    }

private:
    Eigen::VectorXd y_;
    std::vector<Eigen::MatrixXd> sq_;
    double relative_jitter_;
    HyperparamBounds bounds_;
    Eigen::Index n_;
};

} // namespace

TrainingResult train_hyperparams(const Eigen::MatrixXd& train_x, const Eigen::VectorXd& train_y,
                                 const KernelHyperparams& init, const TrainingOptions& options) {
    if (train_x.rows() == 0) {
        throw InvalidArgument("hyperparameter training needs data");
    }
    check_dim(train_x.rows(), train_y.size());
    check_dim(train_x.cols(), init.lengthscales.size());
    const Eigen::Index d = train_x.cols();
    const HyperparamBounds& b = options.bounds;
    if (!(b.lengthscale_lower > 0.0 && b.lengthscale_lower <= b.lengthscale_upper && b.variance_lower > 0.0 &&
          b.variance_lower <= b.variance_upper)) {
        throw InvalidArgument("invalid hyperparameter bounds");
    }

    const Eigen::VectorXd lower = Eigen::VectorXd::Constant(d, std::log(b.lengthscale_lower));
    const Eigen::VectorXd upper = Eigen::VectorXd::Constant(d, std::log(b.lengthscale_upper));

    const ProfiledNegativeLogLikelihood objective(train_x, train_y, options.relative_jitter, b);
    BoxMinimizerOptions minimizer;
    minimizer.max_iterations = options.max_iterations;

    Eigen::VectorXd start = init.lengthscales.array().log().matrix();

    Rng rng(options.seed);
    TrainingResult result;
    result.hyperparams = init;
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_z;
    for (std::size_t s = 0; s <= options.restarts; ++s) {
        if (s > 0) {
            for (Eigen::Index i = 0; i < d; ++i) {
                start[i] = rng.uniform(lower[i], upper[i]);
            }
        }
        const BoxMinimizerResult r = minimize_box(objective, start, lower, upper, minimizer);
        result.evaluations += r.evaluations;
        if (!std::isfinite(r.value)) {
            ++result.failed_starts;
            continue;
        }
        if (r.value < best) {
            best = r.value;
            best_z = r.x;
        }
    }
    if (best_z.size() == 0) {
        std::cerr << "warning: every hyperparameter start failed; keeping initial values\n";
        result.fell_back = true;
        result.log_likelihood = -std::numeric_limits<double>::infinity();
        return result;
    }
    double variance = 0.0;
    objective.evaluate(best_z, nullptr, variance);
    // exp(log(l)) can land a hair outside the box
    result.hyperparams.lengthscales =
        best_z.array().exp().matrix().cwiseMax(b.lengthscale_lower).cwiseMin(b.lengthscale_upper);
    result.hyperparams.signal_variance = variance;
    result.log_likelihood = -best;
    return result;
}

} // namespace bopelites
