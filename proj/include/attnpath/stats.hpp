#pragma once

#include <Eigen/Dense>

#include <vector>

namespace attnpath {

/// Per-column mean, population std, min and max.
template <typename Scalar>
struct StatsSummary {
    using Row = Eigen::Array<Scalar, 1, Eigen::Dynamic>;

    Row mean;
    Row std;
    Row min;
    Row max;

    Eigen::Index cols() const { return mean.size(); }

    /// Column-major over stats: c0_mean, c0_std, c0_min, c0_max, c1_mean, ...
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> flatten() const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(4 * cols());
        for (Eigen::Index c = 0; c < cols(); ++c) {
            out(4 * c + 0) = mean(c);
            out(4 * c + 1) = std(c);
            out(4 * c + 2) = min(c);
            out(4 * c + 3) = max(c);
        }
        return out;
    }
};

/// Summarizes each column of `rows` (one observation per row). Uses the
/// two-pass population variance (divide by n). A matrix with no rows yields
/// zeros for every stat.
template <typename Derived>
StatsSummary<typename Derived::Scalar> summarize_stats(const Eigen::MatrixBase<Derived>& rows) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = rows.rows();
    const Eigen::Index cols = rows.cols();
    StatsSummary<Scalar> s;
    if (n == 0) {
        s.mean = s.std = s.min = s.max = StatsSummary<Scalar>::Row::Zero(cols);
        return s;
    }
    const auto a = rows.array();
    s.min = a.colwise().minCoeff();
    s.max = a.colwise().maxCoeff();
    // Rounding can push the mean a few ulps outside [min, max] on constant
    // columns; clamping first also makes their std exactly zero.
    s.mean = (a.colwise().sum() / static_cast<Scalar>(n)).max(s.min).min(s.max);
    s.std = ((a.rowwise() - s.mean).square().colwise().sum() / static_cast<Scalar>(n)).sqrt();
    return s;
}

}  // namespace attnpath
