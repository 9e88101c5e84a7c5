#pragma once
// Test-only reference computations. Nothing here calls into the library's
// numerical code paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<long double>>;

inline Matrix gauss_jordan_inverse(Matrix a) {
    const std::size_t n = a.size();
    Matrix inv(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0L;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0L) throw std::runtime_error("oracle: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const long double d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const long double f = a[r][col];
            if (f == 0.0L) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Student-t density.
inline long double t_pdf(long double x, long double nu) {
    const long double logc = std::lgamma((nu + 1.0L) / 2.0L) - std::lgamma(nu / 2.0L) -
                             0.5L * std::log(nu * 3.14159265358979323846264338327950288L);
    return std::exp(logc - (nu + 1.0L) / 2.0L * std::log1p(x * x / nu));
}

namespace detail {

inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b,
                           long double fa, long double fm, long double fb) {
    return (b - a) / 6.0L * (fa + 4.0L * fm + fb);
}

inline long double adaptive(const std::function<long double(long double)>& f, long double a, long double b,
                            long double fa, long double fm, long double fb, long double whole, long double eps,
                            int depth) {
    const long double m = (a + b) / 2.0L;
    const long double lm = (a + m) / 2.0L, rm = (m + b) / 2.0L;
    const long double flm = f(lm), frm = f(rm);
    const long double left = simpson(f, a, m, fa, flm, fm);
    const long double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0L * eps)
        return left + right + (left + right - whole) / 15.0L;
    return adaptive(f, a, m, fa, flm, fm, left, eps / 2.0L, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, eps / 2.0L, depth - 1);
}

}  // namespace detail

inline long double integrate(const std::function<long double(long double)>& f, long double a, long double b,
                             long double eps = 1e-14L) {
    const long double fa = f(a), fb = f(b), fm = f((a + b) / 2.0L);
    return detail::adaptive(f, a, b, fa, fm, fb, detail::simpson(f, a, b, fa, fm, fb), eps, 60);
}

/// Two-sided p-value 1 - 2 * integral_0^|t| pdf, split into unit panels so
/// the adaptive rule sees the density's shape.
inline double t_two_sided_p(double t, double nu) {
    const long double x = std::fabs(static_cast<long double>(t));
    long double mass = 0.0L;
    long double a = 0.0L;
    while (a < x) {
        const long double b = std::min(x, a + 1.0L);
        mass += integrate([nu](long double u) { return t_pdf(u, nu); }, a, b);
        a = b;
    }
    const long double p = 1.0L - 2.0L * mass;
    return static_cast<double>(p < 0.0L ? 0.0L : p);
}

struct OlsResult {
    std::vector<std::vector<double>> coef;  // [regressor][equation]
    std::vector<std::vector<double>> se;
    std::vector<std::vector<double>> t;
    std::vector<std::vector<double>> p;
};

/// Normal equations with an explicit inverse. y: n x k, z: n x m.
inline OlsResult ols(const std::vector<std::vector<double>>& y, const std::vector<std::vector<double>>& z) {
    const std::size_t n = z.size(), m = z[0].size(), k = y[0].size();
    Matrix ztz(m, std::vector<long double>(m, 0.0L));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) ztz[i][j] += static_cast<long double>(z[r][i]) * z[r][j];
    const Matrix inv = gauss_jordan_inverse(ztz);

    OlsResult out;
    out.coef.assign(m, std::vector<double>(k));
    out.se = out.t = out.p = out.coef;
    const double dof = static_cast<double>(n - m);
    for (std::size_t eq = 0; eq < k; ++eq) {
        std::vector<long double> zty(m, 0.0L);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t i = 0; i < m; ++i) zty[i] += static_cast<long double>(z[r][i]) * y[r][eq];
        std::vector<long double> b(m, 0.0L);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) b[i] += inv[i][j] * zty[j];
        long double rss = 0.0L;
        for (std::size_t r = 0; r < n; ++r) {
            long double fitted = 0.0L;
            for (std::size_t i = 0; i < m; ++i) fitted += z[r][i] * b[i];
            const long double e = y[r][eq] - fitted;
            rss += e * e;
        }
        const long double s2 = rss / dof;
        for (std::size_t i = 0; i < m; ++i) {
            out.coef[i][eq] = static_cast<double>(b[i]);
            out.se[i][eq] = static_cast<double>(std::sqrt(s2 * inv[i][i]));
            out.t[i][eq] = static_cast<double>(b[i] / std::sqrt(s2 * inv[i][i]));
            out.p[i][eq] = t_two_sided_p(out.t[i][eq], dof);
        }
    }
    return out;
}

using Poly = std::vector<std::complex<double>>;  // ascending powers

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Poly poly_sub(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

/// Durand-Kerner iteration for all roots of a polynomial (ascending powers).
inline std::vector<std::complex<double>> poly_roots(Poly c) {
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    const std::size_t n = c.size() - 1;
    const std::complex<double> lead = c.back();
    for (auto& v : c) v /= lead;
    std::vector<std::complex<double>> z(n);
    const std::complex<double> seed(0.4, 0.9);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<double>(i));
    for (int iter = 0; iter < 5000; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> num = 0.0;
            for (std::size_t d = n + 1; d-- > 0;) num = num * z[i] + c[d];
            std::complex<double> den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            const auto step = num / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15) break;
    }
    return z;
}

/// Roots of det(x^2 I - x A1 - A2) for 2x2 A1, A2: the companion eigenvalues
/// of a bivariate VAR(2).
inline std::vector<std::complex<double>> var2x2_lag2_roots(const double a1[2][2], const double a2[2][2]) {
    Poly m[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = Poly{-a2[i][j], -a1[i][j], i == j ? 1.0 : 0.0};
    return poly_roots(poly_sub(poly_mul(m[0][0], m[1][1]), poly_mul(m[0][1], m[1][0])));
}

/// Maximiser of f on a uniform grid.
inline double grid_argmax(const std::function<double(double)>& f, double lo, double hi, double step) {
    double best_x = lo, best = f(lo);
    const auto n = static_cast<long>(std::llround((hi - lo) / step));
    for (long i = 1; i <= n; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    return best_x;
}

}  // namespace oracle
