#pragma once

#include "attnpath/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace attnpath {

/// Per-feature z-scoring. Columns with population std below 1e-12 keep
/// scale 1 so they standardize to a constant 0.
template <typename Scalar>
struct Standardizer {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Vector mean;
    Vector scale;

    template <typename Derived>
    Matrix transform(const Eigen::MatrixBase<Derived>& X) const {
        return ((X.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array()).matrix();
    }

    template <typename Derived>
    Vector transform_row(const Eigen::MatrixBase<Derived>& x) const {
        return ((x - mean).array() / scale.array()).matrix();
    }
};

inline constexpr double kMinFeatureScale = 1e-12;

template <typename Derived>
Standardizer<typename Derived::Scalar> fit_standardizer(const Eigen::MatrixBase<Derived>& X) {
    using Scalar = typename Derived::Scalar;
    if (X.rows() == 0) throw ValidationError("fit_standardizer: empty matrix");
    Standardizer<Scalar> s;
    const auto n = static_cast<Scalar>(X.rows());
    s.mean = X.colwise().sum().transpose() / n;
    s.scale = ((X.rowwise() - s.mean.transpose()).array().square().colwise().sum() / n).sqrt().transpose();
    for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
        if (s.scale(j) < Scalar(kMinFeatureScale)) s.scale(j) = Scalar(1);
    }
    return s;
}

/// log(1 + e^z) without overflow.
template <typename Scalar>
Scalar softplus(Scalar z) {
    return std::max(z, Scalar(0)) + std::log1p(std::exp(-std::abs(z)));
}

template <typename Scalar>
Scalar sigmoid(Scalar z) {
    if (z >= 0) return Scalar(1) / (Scalar(1) + std::exp(-z));
    const Scalar e = std::exp(z);
    return e / (Scalar(1) + e);
}

template <typename Scalar>
struct LogisticObjective {
    Scalar loss = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> grad_w;
    Scalar grad_b = 0;
};

/// Mean logistic loss + (lambda/2)|w|^2 and its gradient; the bias is not
/// penalized. `y` holds 0/1 targets.
template <typename DX, typename DY, typename DW>
LogisticObjective<typename DX::Scalar> logistic_objective(const Eigen::MatrixBase<DX>& X,
                                                          const Eigen::MatrixBase<DY>& y,
                                                          const Eigen::MatrixBase<DW>& w,
                                                          typename DX::Scalar b,
                                                          typename DX::Scalar lambda) {
    using Scalar = typename DX::Scalar;
    const auto n = static_cast<Scalar>(X.rows());
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> z = (X * w).array() + b;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> residual(z.size());
    Scalar loss = 0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        loss += softplus(z(i)) - y(i) * z(i);
        residual(i) = sigmoid(z(i)) - y(i);
    }
    LogisticObjective<Scalar> out;
    out.loss = loss / n + Scalar(0.5) * lambda * w.squaredNorm();
    out.grad_w = X.transpose() * residual / n + lambda * w;
    out.grad_b = residual.sum() / n;
    return out;
}

struct TrainOptions {
    double lambda = 1.0;
    int max_iter = 1000;
    double tol = 1e-6;
    bool record_loss = false;
};

struct LogRegModel {
    Eigen::VectorXd weights;
    double bias = 0.0;
    Standardizer<double> scaler;
    double lambda = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> loss_history;  ///< objective after each accepted step, when recorded

    Eigen::Index width() const { return weights.size(); }
};

/// Full-batch gradient descent with an Armijo backtracking line search. The
/// gradient is scaled by the inverse Hessian diagonal and the trial step
/// starts at twice the last accepted one, so flat directions (e.g. the bias
/// on single-class data) are crossed in few iterations.
/// Stops when the gradient's max-norm drops below tol or after max_iter.
LogRegModel train_logreg(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const TrainOptions& options = {});

/// Strictly inside (0, 1) for finite input.
double predict_proba(const LogRegModel& model, const Eigen::VectorXd& x);
Eigen::VectorXd predict_proba(const LogRegModel& model, const Eigen::MatrixXd& X);

}  // namespace attnpath
