#pragma once

// Cyclic Jacobi eigensolver on plain row-major storage. Used as an
// independent reference for the Eigen-backed PCA.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace attnpath::oracle {

struct SymmetricEigen {
    std::vector<double> values;                ///< descending
    std::vector<std::vector<double>> vectors;  ///< vectors[i] pairs with values[i]
};

inline SymmetricEigen jacobi_eigen(std::vector<std::vector<double>> a, int max_sweeps = 100) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i][i] > a[j][j]; });
    SymmetricEigen out;
    for (std::size_t i : order) {
        out.values.push_back(a[i][i]);
        std::vector<double> col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v[k][i];
        // Largest-magnitude coordinate positive.
        const auto big = std::max_element(col.begin(), col.end(),
                                          [](double x, double y) { return std::abs(x) < std::abs(y); });
        if (*big < 0) for (auto& x : col) x = -x;
        out.vectors.push_back(std::move(col));
    }
    return out;
}

/// Population covariance (divide by n) of row samples.
inline std::vector<std::vector<double>> covariance(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size(), d = rows.front().size();
    std::vector<double> mean(d, 0.0);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < d; ++j) mean[j] += r[j] / static_cast<double>(n);
    std::vector<std::vector<double>> c(d, std::vector<double>(d, 0.0));
    for (const auto& r : rows)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) c[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]) / static_cast<double>(n);
    return c;
}

}  // namespace attnpath::oracle
