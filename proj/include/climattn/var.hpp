#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <boost/math/distributions/students_t.hpp>

#include "error.hpp"
#include "linalg.hpp"
#include "period.hpp"

namespace climattn {

/// Balanced multivariate panel; data is T x k with rows in period order.
struct Panel {
    std::vector<std::string> variables;
    Granularity granularity = Granularity::quarterly;
    std::vector<Period> periods;
    MatrixXd data;

    Eigen::Index rows() const noexcept { return data.rows(); }
    Eigen::Index vars() const noexcept { return data.cols(); }
};

inline void validate(const Panel& panel) {
    if (static_cast<Eigen::Index>(panel.variables.size()) != panel.data.cols())
        throw UnbalancedPanel("panel has " + std::to_string(panel.variables.size()) + " names for " +
                              std::to_string(panel.data.cols()) + " columns");
    if (!panel.periods.empty() && static_cast<Eigen::Index>(panel.periods.size()) != panel.data.rows())
        throw UnbalancedPanel("panel period labels do not match its rows");
    for (std::size_t i = 1; i < panel.periods.size(); ++i)
        if (panel.periods[i] != panel.periods[i - 1].next())
            throw UnbalancedPanel("panel periods are not contiguous at " + panel.periods[i].label());
    if (!panel.data.allFinite()) throw UnbalancedPanel("panel contains undefined or non-finite values");
}

struct LagMatrices {
    MatrixXd targets;     // (T-p) x k
    MatrixXd regressors;  // (T-p) x (k*p [+1])
};

/// Row t of the regressors is [1, x_{t-1}, ..., x_{t-p}]; the first p panel
/// rows are consumed as initial conditions.
inline LagMatrices build_lag_matrix(const Panel& panel, int p, bool with_constant = true) {
    validate(panel);
    const Eigen::Index t = panel.rows();
    const Eigen::Index k = panel.vars();
    if (p < 1) throw InsufficientSample("lag order must be at least 1");
    if (k < 1 || t <= p)
        throw InsufficientSample("panel with " + std::to_string(t) + " rows is too short for " +
                                 std::to_string(p) + " lags");
    const Eigen::Index n = t - p;
    const Eigen::Index off = with_constant ? 1 : 0;
    LagMatrices lm{panel.data.bottomRows(n), MatrixXd(n, k * p + off)};
    for (Eigen::Index r = 0; r < n; ++r) {
        if (with_constant) lm.regressors(r, 0) = 1.0;
        for (Eigen::Index l = 1; l <= p; ++l)
            lm.regressors.block(r, off + (l - 1) * k, 1, k) = panel.data.row(p + r - l);
    }
    return lm;
}

struct VarSpec {
    int k = 0;
    int p = 0;
    bool with_constant = true;
};

/// Coefficient-shaped container: lag[x](z, y) is the effect of variable y at
/// lag x+1 on variable z.
struct VarCoefficients {
    VectorXd constant;
    std::vector<MatrixXd> lag;
};

struct VarFit {
    VarSpec spec;
    std::vector<std::string> variables;
    VarCoefficients coef;
    VarCoefficients se;
    VarCoefficients tstat;
    VarCoefficients pvalue;
    MatrixXd sigma;
    MatrixXd residuals;
    Eigen::Index t_eff = 0;
    Eigen::Index dof = 0;
    double rcond = 0.0;
    std::optional<Period> sample_start;
    std::optional<Period> sample_end;
};

/// Two-sided p-value of a t statistic.
inline double p_value_t(double t, double dof) {
    if (!(dof >= 1.0)) throw std::invalid_argument("p_value_t: degrees of freedom must be >= 1");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    const boost::math::students_t dist(dof);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

inline constexpr double min_design_rcond = 1e-12;

namespace detail {

inline VarCoefficients unpack(const MatrixXd& b, const VarSpec& spec) {
    const Eigen::Index k = spec.k;
    const Eigen::Index off = spec.with_constant ? 1 : 0;
    VarCoefficients c;
    c.constant = spec.with_constant ? VectorXd(b.row(0).transpose())
                                    : VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());
    for (int x = 0; x < spec.p; ++x) c.lag.push_back(b.block(off + x * k, 0, k, k).transpose());
    return c;
}

inline double t_ratio(double coef, double se) {
    if (se > 0.0) return coef / se;
    if (coef == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), coef);
}

}  // namespace detail

/// Equation-by-equation OLS with a column-pivoted QR solve and classical
/// standard errors.
inline VarFit estimate_ols(const Panel& panel, int p, bool with_constant = true) {
    const auto lm = build_lag_matrix(panel, p, with_constant);
    const MatrixXd& z = lm.regressors;
    const MatrixXd& y = lm.targets;
    const Eigen::Index n = z.rows();
    const Eigen::Index m = z.cols();
    const Eigen::Index dof = n - m;
    if (dof < 1)
        throw InsufficientSample("no residual degrees of freedom: " + std::to_string(n) + " observations for " +
                                 std::to_string(m) + " coefficients per equation");

    const VectorXd sv = Eigen::JacobiSVD<MatrixXd>(z).singularValues();
    const double smax = sv.maxCoeff();
    const double rcond = smax > 0.0 ? std::pow(sv.minCoeff() / smax, 2) : 0.0;
    if (!(rcond >= min_design_rcond)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", rcond);
        throw SingularDesign(std::string("regressor cross-product is singular (rcond ") + buf + ")", rcond);
    }

    const Eigen::ColPivHouseholderQR<MatrixXd> qr(z);
    const MatrixXd b = qr.solve(y);
    const MatrixXd r = qr.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
    const MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(m, m));
    const MatrixXd perm = qr.colsPermutation();
    const MatrixXd xtx_inv = perm * (r_inv * r_inv.transpose()) * perm.transpose();

    VarFit fit;
    fit.spec = {static_cast<int>(panel.vars()), p, with_constant};
    fit.variables = panel.variables;
    fit.residuals = y - z * b;
    fit.sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(dof);
    fit.t_eff = n;
    fit.dof = dof;
    fit.rcond = rcond;
    if (!panel.periods.empty()) {
        fit.sample_start = panel.periods[static_cast<std::size_t>(p)];
        fit.sample_end = panel.periods.back();
    }

    MatrixXd se(m, y.cols()), t(m, y.cols()), pv(m, y.cols());
    for (Eigen::Index eq = 0; eq < y.cols(); ++eq) {
        for (Eigen::Index j = 0; j < m; ++j) {
            se(j, eq) = std::sqrt(fit.sigma(eq, eq) * xtx_inv(j, j));
            t(j, eq) = detail::t_ratio(b(j, eq), se(j, eq));
            pv(j, eq) = p_value_t(t(j, eq), static_cast<double>(dof));
        }
    }
    fit.coef = detail::unpack(b, fit.spec);
    fit.se = detail::unpack(se, fit.spec);
    fit.tstat = detail::unpack(t, fit.spec);
    fit.pvalue = detail::unpack(pv, fit.spec);
    return fit;
}

struct Stability {
    double radius = 0.0;
    bool stable = true;
};

inline Stability stability(std::span<const MatrixXd> lags) {
    const double radius = spectral_radius(companion_matrix(lags));
    return {radius, radius < 1.0};
}

inline Stability stability(const VarFit& fit) { return stability(fit.coef.lag); }

/// Iterates x_t = constants + sum_l lags[l] x_{t-l}. `history` holds the last
/// p observations, oldest first.
inline std::vector<VectorXd> forecast(const VectorXd& constants, std::span<const MatrixXd> lags,
                                      const MatrixXd& history, std::size_t horizon) {
    const auto p = static_cast<Eigen::Index>(lags.size());
    if (history.rows() != p || history.cols() != constants.size())
        throw std::invalid_argument("forecast: history must have exactly p rows of k values");
    std::vector<VectorXd> recent;  // newest first
    for (Eigen::Index r = p - 1; r >= 0; --r) recent.push_back(history.row(r).transpose());

    std::vector<VectorXd> out;
    out.reserve(horizon);
    for (std::size_t h = 0; h < horizon; ++h) {
        VectorXd next = affine_step(constants, lags, recent);
        recent.insert(recent.begin(), next);
        recent.pop_back();
        out.push_back(std::move(next));
    }
    return out;
}

inline std::vector<VectorXd> forecast(const VarFit& fit, const MatrixXd& history, std::size_t horizon) {
    const VectorXd constants = fit.spec.with_constant ? fit.coef.constant : VectorXd::Zero(fit.spec.k);
    return forecast(constants, fit.coef.lag, history, horizon);
}

// ---------------------------------------------------------------------------
// Coefficient table in ARx(y,z) layout
// ---------------------------------------------------------------------------

struct TableRow {
    std::string label;
    double value = 0.0;
    double se = 0.0;
    double tstat = 0.0;
    double pvalue = 0.0;
    std::string stars;
};

/// *** p < 0.01, ** p < 0.05, * p < 0.10.
inline std::string significance_stars(double p) {
    if (std::isnan(p)) return "";
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.10) return "*";
    return "";
}

/// Two decimals with trailing zeros dropped: 6.910 -> "6.91", -1.80 -> "-1.8",
/// 0.004 -> "0".
inline std::string render_number(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

inline std::vector<TableRow> format_table(const VarFit& fit) {
    std::vector<TableRow> rows;
    const int k = fit.spec.k;
    if (fit.spec.with_constant) {
        for (int z = 0; z < k; ++z) {
            const double p = fit.pvalue.constant[z];
            rows.push_back({"Constant(" + std::to_string(z + 1) + ")", fit.coef.constant[z], fit.se.constant[z],
                            fit.tstat.constant[z], p, significance_stars(p)});
        }
    }
    for (int x = 0; x < fit.spec.p; ++x) {
        const auto ux = static_cast<std::size_t>(x);
        for (int z = 0; z < k; ++z) {
            for (int y = 0; y < k; ++y) {
                const double p = fit.pvalue.lag[ux](z, y);
                rows.push_back({"AR{" + std::to_string(x + 1) + "}(" + std::to_string(y + 1) + "," +
                                    std::to_string(z + 1) + ")",
                                fit.coef.lag[ux](z, y), fit.se.lag[ux](z, y), fit.tstat.lag[ux](z, y), p,
                                significance_stars(p)});
            }
        }
    }
    return rows;
}

/// Rendered cells: label, value with stars, se, t, p.
inline std::vector<std::string> render_cells(const TableRow& row) {
    return {row.label, render_number(row.value) + row.stars, render_number(row.se), render_number(row.tstat),
            render_number(row.pvalue)};
}

/// `AR{1}(1,1) & 0.82*** & 0.12 & 6.91 & 0`
inline std::string render_row(const TableRow& row, const std::string& sep = " & ") {
    const auto cells = render_cells(row);
    std::string out = cells[0];
    for (std::size_t i = 1; i < cells.size(); ++i) out += sep + cells[i];
    return out;
}

inline const std::vector<std::string>& table_headers() {
    static const std::vector<std::string> h{"", "Value", "Standard Error", "TStatistic", "PValue"};
    return h;
}

/// Aligned plain-text rendering: label column left-aligned, numbers right-aligned.
inline std::string render_text_table(const std::vector<TableRow>& rows) {
    std::vector<std::vector<std::string>> cells{table_headers()};
    for (const auto& r : rows) cells.push_back(render_cells(r));
    std::vector<std::size_t> width(5, 0);
    for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    std::string out;
    for (const auto& line : cells) {
        std::string text = line[0] + std::string(width[0] - line[0].size(), ' ');
        for (std::size_t c = 1; c < line.size(); ++c)
            text += "  " + std::string(width[c] - line[c].size(), ' ') + line[c];
        out += text + "\n";
    }
    return out;
}

}  // namespace climattn
