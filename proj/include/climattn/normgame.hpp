#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "error.hpp"
#include "linalg.hpp"

namespace climattn {

/// Linear-quadratic norm-transmission game between R groups. Group i
/// chooses a_i to maximise a_i (b_i + sum_j lambda_ij a_j,prev) - c_i/2 a_i^2.
struct GroupGame {
    std::vector<std::string> group_names;
    VectorXd b;
    VectorXd c;
    MatrixXd lambda;

    Eigen::Index size() const noexcept { return b.size(); }
};

inline void validate(const GroupGame& g) {
    const Eigen::Index r = g.b.size();
    if (r < 1) throw InvalidGame("game needs at least one group");
    if (g.c.size() != r || g.lambda.rows() != r || g.lambda.cols() != r)
        throw InvalidGame("game dimensions disagree: b, c and lambda must describe the same groups");
    if (!g.group_names.empty() && static_cast<Eigen::Index>(g.group_names.size()) != r)
        throw InvalidGame("game has " + std::to_string(g.group_names.size()) + " names for " +
                          std::to_string(r) + " groups");
    if (!g.b.allFinite() || !g.c.allFinite() || !g.lambda.allFinite())
        throw InvalidGame("game parameters must be finite");
    for (Eigen::Index i = 0; i < r; ++i)
        if (!(g.c[i] > 0.0)) throw InvalidGame("cost c_" + std::to_string(i + 1) + " must be positive");
}

inline double utility(const GroupGame& g, Eigen::Index i, double a_i, const VectorXd& a_prev) {
    const double interest = g.b[i] + g.lambda.row(i).dot(a_prev);
    return a_i * interest - 0.5 * g.c[i] * a_i * a_i;
}

/// VAR(1) form of the game: x_t = constants + pi1 x_{t-1}.
struct VarParams {
    VectorXd constants;
    MatrixXd pi1;
};

inline VarParams to_var_params(const GroupGame& g) {
    VarParams v{g.b.cwiseQuotient(g.c), g.lambda};
    for (Eigen::Index i = 0; i < g.size(); ++i) v.pi1.row(i) /= g.c[i];
    return v;
}

/// Only b/c and lambda/c are identified, so costs are normalised to 1.
inline GroupGame from_var_params(const VectorXd& constants, const MatrixXd& pi1,
                                 std::vector<std::string> names = {}) {
    if (pi1.rows() != pi1.cols() || pi1.rows() != constants.size())
        throw InvalidGame("VAR(1) parameters: pi1 must be square and match the constants");
    return GroupGame{std::move(names), constants, VectorXd::Ones(constants.size()), pi1};
}

inline GroupGame from_var_params(const VarParams& v, std::vector<std::string> names = {}) {
    return from_var_params(v.constants, v.pi1, std::move(names));
}

inline VectorXd best_response(const GroupGame& g, const VectorXd& a_prev) {
    const auto v = to_var_params(g);
    const MatrixXd lags[] = {v.pi1};
    const VectorXd hist[] = {a_prev};
    return affine_step(v.constants, lags, hist);
}

/// Largest eigenvalue modulus of diag(1/c) lambda.
inline double interaction_radius(const GroupGame& g) { return spectral_radius(to_var_params(g).pi1); }

struct Trajectory {
    std::vector<VectorXd> actions;  // actions[t], t = 0..T (truncated on divergence)
    bool diverged = false;
    std::optional<std::size_t> diverged_at;  // first step whose state exceeded the bound
};

inline constexpr double divergence_bound = 1e12;

/// Naive-expectation dynamics a_t = best_response(a_{t-1}).
inline Trajectory simulate(const GroupGame& g, const VectorXd& a0, std::size_t steps) {
    validate(g);
    if (a0.size() != g.size()) throw InvalidGame("initial condition has the wrong length");
    const auto v = to_var_params(g);
    const MatrixXd lags[] = {v.pi1};

    Trajectory tr;
    tr.actions.reserve(steps + 1);
    tr.actions.push_back(a0);
    for (std::size_t t = 1; t <= steps; ++t) {
        const VectorXd hist[] = {tr.actions.back()};
        VectorXd next = affine_step(v.constants, lags, hist);
        if (!next.allFinite() || next.cwiseAbs().maxCoeff() > divergence_bound) {
            tr.diverged = true;
            tr.diverged_at = t;
            break;
        }
        tr.actions.push_back(std::move(next));
    }
    return tr;
}

struct SteadyState {
    std::optional<VectorXd> point;  // empty when the dynamics are not contracting
    double spectral_radius = 0.0;

    bool converges() const noexcept { return point.has_value(); }
};

/// Solves (I - diag(1/c) lambda) a = b / c when the best-response map is a
/// contraction; otherwise reports the spectral radius only.
inline SteadyState steady_state(const GroupGame& g) {
    validate(g);
    const auto v = to_var_params(g);
    const double radius = spectral_radius(v.pi1);
    const MatrixXd system = MatrixXd::Identity(g.size(), g.size()) - v.pi1;
    if (radius >= 1.0) {
        Eigen::FullPivLU<MatrixXd> lu(system);
        lu.setThreshold(0.0);
        if (!lu.isInvertible())
            throw SingularSystem("steady-state system is singular (spectral radius " + std::to_string(radius) + ")");
        return {std::nullopt, radius};
    }
    return {system.partialPivLu().solve(v.constants), radius};
}

}  // namespace climattn
