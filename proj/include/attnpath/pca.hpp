#pragma once

#include "attnpath/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace attnpath {

/// Principal axes of a sample set. `components` holds one axis per row;
/// axes beyond the data's numerical rank are zero rows with zero variance.
template <typename Scalar>
struct PcaModel {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Vector mean;
    Matrix components;           ///< k x dim
    Vector explained_variance;   ///< k, non-increasing

    Eigen::Index dim() const { return mean.size(); }
    Eigen::Index k() const { return components.rows(); }

    /// All-zero model: every projection is the zero vector.
    static PcaModel zero(Eigen::Index dim, Eigen::Index k) {
        return {Vector::Zero(dim), Matrix::Zero(k, dim), Vector::Zero(k)};
    }

    template <typename Derived>
    Vector project(const Eigen::MatrixBase<Derived>& v) const {
        return components * (v - mean);
    }

    /// Projects every row of `samples`.
    template <typename Derived>
    Matrix transform(const Eigen::MatrixBase<Derived>& samples) const {
        return (samples.rowwise() - mean.transpose()) * components.transpose();
    }
};

/// Flips `v` so its largest-magnitude coordinate is positive (first one on ties).
template <typename Derived>
void fix_sign(Eigen::MatrixBase<Derived>& v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
}

/// Fits the top-k principal axes of `samples` (one sample per row) from the
/// population covariance (divide by n). With fewer samples than dimensions
/// the n x n Gram matrix is decomposed instead; its nonzero spectrum is the
/// covariance's and the axes are recovered as centered^T u.
template <typename Derived>
PcaModel<typename Derived::Scalar> fit_pca(const Eigen::MatrixBase<Derived>& samples, Eigen::Index k) {
    using Scalar = typename Derived::Scalar;
    using Model = PcaModel<Scalar>;
    using Matrix = typename Model::Matrix;

    const Eigen::Index n = samples.rows();
    const Eigen::Index d = samples.cols();
    if (n == 0) throw ValidationError("fit_pca: no samples");
    if (k < 0) throw ValidationError("fit_pca: negative component count");

    Model model = Model::zero(d, k);
    model.mean = samples.colwise().mean().transpose();
    const Matrix centered = samples.rowwise() - model.mean.transpose();
    const bool dual = n < d;
    const Matrix scatter = dual ? Matrix(centered * centered.transpose()) : Matrix(centered.transpose() * centered);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(scatter / static_cast<Scalar>(n));
    if (eig.info() != Eigen::Success) throw std::runtime_error("fit_pca: eigendecomposition failed");

    // Eigen returns ascending eigenvalues.
    const auto& values = eig.eigenvalues();
    const auto& vectors = eig.eigenvectors();
    const Eigen::Index m = values.size();
    const Scalar top = m > 0 ? values(m - 1) : Scalar(0);
    const Scalar cutoff = top * static_cast<Scalar>(10 * d) * std::numeric_limits<Scalar>::epsilon();
    for (Eigen::Index i = 0; i < std::min(k, m); ++i) {
        const Eigen::Index src = m - 1 - i;
        const Scalar lambda = values(src);
        if (!(top > 0) || lambda <= cutoff) break;
        typename Model::Vector axis = dual ? typename Model::Vector((centered.transpose() * vectors.col(src)).normalized())
                                           : typename Model::Vector(vectors.col(src));
        fix_sign(axis);
        model.components.row(i) = axis.transpose();
        model.explained_variance(i) = lambda;
    }
    return model;
}

}  // namespace attnpath
