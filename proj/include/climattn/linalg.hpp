#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace climattn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Largest eigenvalue modulus of a square matrix (0 for an empty one).
inline double spectral_radius(const MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<MatrixXd> solver(m, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// [[A1 A2 ... Ap], [I 0 ... 0], ..., [0 ... I 0]] for k x k lag matrices.
inline MatrixXd companion_matrix(std::span<const MatrixXd> lags) {
    if (lags.empty()) return {};
    const Eigen::Index k = lags.front().rows();
    const Eigen::Index p = static_cast<Eigen::Index>(lags.size());
    MatrixXd c = MatrixXd::Zero(k * p, k * p);
    for (Eigen::Index l = 0; l < p; ++l) c.block(0, l * k, k, k) = lags[static_cast<std::size_t>(l)];
    if (p > 1) c.block(k, 0, k * (p - 1), k * (p - 1)).setIdentity();
    return c;
}

/// One step of x_t = constants + sum_l lags[l] * x_{t-1-l}, where history[0]
/// is x_{t-1}. Explicit loops fix the summation order so that every caller
/// gets the same rounding.
inline VectorXd affine_step(const VectorXd& constants, std::span<const MatrixXd> lags,
                            std::span<const VectorXd> history) {
    const Eigen::Index k = constants.size();
    VectorXd next(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        double acc = constants[i];
        for (std::size_t l = 0; l < lags.size(); ++l) {
            const MatrixXd& a = lags[l];
            const VectorXd& x = history[l];
            for (Eigen::Index j = 0; j < k; ++j) acc += a(i, j) * x[j];
        }
        next[i] = acc;
    }
    return next;
}

}  // namespace climattn
