#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "period.hpp"

namespace climattn {

struct SeriesRow {
    Period period;
    std::optional<double> value;

    friend bool operator==(const SeriesRow&, const SeriesRow&) = default;
};

struct ShareSeries {
    std::string label;
    Granularity granularity = Granularity::monthly;
    std::vector<SeriesRow> rows;
};

struct IndexSeries {
    std::string label;
    Granularity granularity = Granularity::monthly;
    Window normalization_window;
    std::vector<std::string> sources;
    std::vector<SeriesRow> rows;
};

inline ShareSeries from_mentions(const MentionSeries& m) {
    ShareSeries s{m.outlet, m.granularity, {}};
    s.rows.reserve(m.rows.size());
    for (const auto& r : m.rows) s.rows.push_back({r.period, r.share});
    return s;
}

namespace detail {

inline Window full_extent(const std::vector<SeriesRow>& rows, const std::string& label) {
    if (rows.empty()) throw InsufficientData("series '" + label + "' is empty");
    return {rows.front().period, rows.back().period};
}

inline Window resolve_window(const std::optional<Window>& w, Granularity g,
                             const std::vector<SeriesRow>& rows, const std::string& label) {
    if (!w) return full_extent(rows, label);
    return w->convert(g);
}

inline std::vector<double> defined_in(const std::vector<SeriesRow>& rows, const Window& w) {
    std::vector<double> v;
    for (const auto& r : rows)
        if (r.value && w.contains(r.period)) v.push_back(*r.value);
    return v;
}

inline double mean(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

/// Sample (n-1) standard deviation; two-pass.
inline double sample_sd(const std::vector<double>& v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline bool all_equal(const std::vector<double>& v) {
    for (double x : v)
        if (x != v.front()) return false;
    return true;
}

inline void require_finite(const std::vector<SeriesRow>& rows, const std::string& label) {
    for (const auto& r : rows)
        if (r.value && !std::isfinite(*r.value))
            throw std::invalid_argument("series '" + label + "' has a non-finite value at " +
                                        r.period.label());
}

}  // namespace detail

/// Divides the whole series by its sample standard deviation over `window`
/// (default: full extent).
inline ShareSeries standardize(const ShareSeries& s, const std::optional<Window>& window = std::nullopt) {
    detail::require_finite(s.rows, s.label);
    const Window w = detail::resolve_window(window, s.granularity, s.rows, s.label);
    const auto values = detail::defined_in(s.rows, w);
    if (values.size() < 2)
        throw InsufficientData("series '" + s.label + "' has fewer than 2 defined values in " + w.label());
    const double sd = detail::sample_sd(values);
    if (detail::all_equal(values) || sd == 0.0)
        throw ZeroVariance("series '" + s.label + "' has zero variance in " + w.label());
    ShareSeries out{s.label, s.granularity, s.rows};
    for (auto& r : out.rows)
        if (r.value) *r.value /= sd;
    return out;
}

/// Standardize each series, average the defined values per period, then
/// rescale so the window mean is 100.
inline IndexSeries build_index(const std::vector<ShareSeries>& series,
                               const std::optional<Window>& window = std::nullopt,
                               std::string label = "index") {
    if (series.empty()) throw std::invalid_argument("build_index needs at least one series");
    const Granularity g = series.front().granularity;
    for (const auto& s : series)
        if (s.granularity != g)
            throw std::invalid_argument("build_index: series '" + s.label + "' has a different granularity");

    struct Acc {
        double sum = 0.0;
        int n = 0;
    };
    std::map<Period, Acc> by_period;
    for (const auto& s : series) {
        for (const auto& r : s.rows) by_period[r.period];
    }
    std::vector<SeriesRow> all_periods;
    for (const auto& [p, _] : by_period) all_periods.push_back({p, std::nullopt});
    const Window w = detail::resolve_window(window, g, all_periods, label);

    for (const auto& s : series) {
        const auto z = standardize(s, w);
        for (const auto& r : z.rows) {
            if (!r.value) continue;
            auto& acc = by_period[r.period];
            acc.sum += *r.value;
            ++acc.n;
        }
    }

    IndexSeries out;
    out.label = std::move(label);
    out.granularity = g;
    out.normalization_window = w;
    for (const auto& s : series) out.sources.push_back(s.label);
    for (const auto& [p, acc] : by_period) {
        SeriesRow row{p, std::nullopt};
        if (acc.n > 0) row.value = acc.sum / acc.n;
        out.rows.push_back(row);
    }

    const auto in_window = detail::defined_in(out.rows, w);
    if (in_window.empty()) throw InsufficientData("index '" + out.label + "' has no values in " + w.label());
    const double m = detail::mean(in_window);
    if (!(m > 0.0))
        throw NonPositiveMean("index '" + out.label + "' has non-positive mean over " + w.label());
    for (auto& r : out.rows)
        if (r.value) *r.value = *r.value / m * 100.0;
    return out;
}

/// Rescales a single series to mean 100 over `window`. With `rescale_sd`
/// the affine map to mean 100 and standard deviation 100 is used instead.
inline IndexSeries normalize_mean100(const ShareSeries& s, const std::optional<Window>& window = std::nullopt,
                                     bool rescale_sd = false) {
    detail::require_finite(s.rows, s.label);
    const Window w = detail::resolve_window(window, s.granularity, s.rows, s.label);
    const auto values = detail::defined_in(s.rows, w);
    if (values.empty()) throw InsufficientData("series '" + s.label + "' has no values in " + w.label());
    const double m = detail::mean(values);

    IndexSeries out{s.label, s.granularity, w, {s.label}, s.rows};
    if (rescale_sd) {
        if (values.size() < 2)
            throw InsufficientData("series '" + s.label + "' has fewer than 2 defined values in " + w.label());
        const double sd = detail::sample_sd(values);
        if (detail::all_equal(values) || sd == 0.0)
            throw ZeroVariance("series '" + s.label + "' has zero variance in " + w.label());
        for (auto& r : out.rows)
            if (r.value) *r.value = 100.0 + 100.0 * (*r.value - m) / sd;
        return out;
    }
    if (!(m > 0.0)) throw NonPositiveMean("series '" + s.label + "' has non-positive mean over " + w.label());
    for (auto& r : out.rows)
        if (r.value) *r.value = *r.value / m * 100.0;
    return out;
}

/// Mean of the defined sub-period values in each coarser period; the coarse
/// period is undefined only when none of its sub-periods are defined.
inline ShareSeries resample_mean(const ShareSeries& s, Granularity target) {
    if (static_cast<int>(target) < static_cast<int>(s.granularity))
        throw std::invalid_argument("resample_mean: target granularity must not be finer than the source");
    struct Acc {
        double sum = 0.0;
        int n = 0;
    };
    std::map<Period, Acc> acc;
    for (const auto& r : s.rows) {
        auto& a = acc[r.period.convert(target)];
        if (r.value) {
            a.sum += *r.value;
            ++a.n;
        }
    }
    ShareSeries out{s.label, target, {}};
    if (acc.empty()) return out;
    for (Period p = acc.begin()->first; p <= acc.rbegin()->first; p = p.next()) {
        SeriesRow row{p, std::nullopt};
        if (auto it = acc.find(p); it != acc.end() && it->second.n > 0) row.value = it->second.sum / it->second.n;
        out.rows.push_back(row);
    }
    return out;
}

inline ShareSeries to_quarterly(const ShareSeries& s) {
    if (s.granularity != Granularity::monthly) throw std::invalid_argument("to_quarterly expects a monthly series");
    return resample_mean(s, Granularity::quarterly);
}

/// Pearson correlation over the periods where both series are defined.
inline double correlation(const ShareSeries& a, const ShareSeries& b) {
    if (a.granularity != b.granularity) throw std::invalid_argument("correlation: granularity mismatch");
    std::map<Period, double> av;
    for (const auto& r : a.rows)
        if (r.value) av[r.period] = *r.value;
    std::vector<double> x, y;
    for (const auto& r : b.rows) {
        if (!r.value) continue;
        if (auto it = av.find(r.period); it != av.end()) {
            x.push_back(it->second);
            y.push_back(*r.value);
        }
    }
    if (x.size() < 2) throw InsufficientOverlap("correlation needs at least 2 common defined periods");
    if (detail::all_equal(x) || detail::all_equal(y)) throw ZeroVariance("correlation of a constant series");
    const double mx = detail::mean(x);
    const double my = detail::mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("correlation of a constant series");
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

}  // namespace climattn
