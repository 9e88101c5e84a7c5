#pragma once

#include <charconv>
#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace climattn {

using Date = std::chrono::year_month_day;

enum class Granularity { monthly, quarterly, yearly };

inline std::string_view to_string(Granularity g) {
    switch (g) {
        case Granularity::monthly: return "monthly";
        case Granularity::quarterly: return "quarterly";
        case Granularity::yearly: return "yearly";
    }
    return "?";
}

inline Granularity parse_granularity(std::string_view s) {
    if (s == "monthly") return Granularity::monthly;
    if (s == "quarterly") return Granularity::quarterly;
    if (s == "yearly") return Granularity::yearly;
    throw ParseError("unknown granularity '" + std::string(s) + "'");
}

namespace detail {

inline std::optional<int> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

}  // namespace detail

/// Strict ISO-8601 calendar date `YYYY-MM-DD`.
inline Date parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        throw ParseError("invalid date '" + std::string(s) + "', expected YYYY-MM-DD");
    auto y = detail::parse_int(s.substr(0, 4));
    auto m = detail::parse_int(s.substr(5, 2));
    auto d = detail::parse_int(s.substr(8, 2));
    if (!y || !m || !d || *m < 1 || *d < 1)
        throw ParseError("invalid date '" + std::string(s) + "'");
    Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
              std::chrono::day{static_cast<unsigned>(*d)}};
    if (!date.ok()) throw ParseError("invalid calendar date '" + std::string(s) + "'");
    return date;
}

inline std::string format_date(const Date& d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

/// A calendar month, quarter or year. Stored as an ordinal so that
/// consecutive periods differ by exactly one.
class Period {
public:
    Period() = default;

    static Period containing(Granularity g, const Date& d) {
        const int y = static_cast<int>(d.year());
        const int m = static_cast<int>(static_cast<unsigned>(d.month()));
        switch (g) {
            case Granularity::monthly: return Period(g, y * 12 + (m - 1));
            case Granularity::quarterly: return Period(g, y * 4 + (m - 1) / 3);
            case Granularity::yearly: return Period(g, y);
        }
        return {};
    }

    static Period from_ordinal(Granularity g, int ordinal) { return Period(g, ordinal); }

    /// Accepts `YYYY-MM`, `YYYY-Qn` or `YYYY`.
    static Period parse(std::string_view s) {
        auto bad = [&] { return ParseError("invalid period '" + std::string(s) + "'"); };
        if (s.size() == 4) {
            auto y = detail::parse_int(s);
            if (!y) throw bad();
            return Period(Granularity::yearly, *y);
        }
        if (s.size() == 7 && s[4] == '-') {
            auto y = detail::parse_int(s.substr(0, 4));
            if (!y) throw bad();
            if (s[5] == 'Q') {
                auto q = detail::parse_int(s.substr(6, 1));
                if (!q || *q < 1 || *q > 4) throw bad();
                return Period(Granularity::quarterly, *y * 4 + (*q - 1));
            }
            auto m = detail::parse_int(s.substr(5, 2));
            if (!m || *m < 1 || *m > 12) throw bad();
            return Period(Granularity::monthly, *y * 12 + (*m - 1));
        }
        throw bad();
    }

    Granularity granularity() const noexcept { return granularity_; }
    int ordinal() const noexcept { return ordinal_; }

    int year() const noexcept {
        switch (granularity_) {
            case Granularity::monthly: return detail::floor_div(ordinal_, 12);
            case Granularity::quarterly: return detail::floor_div(ordinal_, 4);
            case Granularity::yearly: return ordinal_;
        }
        return 0;
    }

    /// Month 1..12, quarter 1..4, or 0 for yearly periods.
    int sub() const noexcept {
        switch (granularity_) {
            case Granularity::monthly: return ordinal_ - year() * 12 + 1;
            case Granularity::quarterly: return ordinal_ - year() * 4 + 1;
            case Granularity::yearly: return 0;
        }
        return 0;
    }

    Date start() const {
        unsigned month = 1;
        if (granularity_ == Granularity::monthly) month = static_cast<unsigned>(sub());
        if (granularity_ == Granularity::quarterly) month = static_cast<unsigned>(3 * sub() - 2);
        return Date{std::chrono::year{year()}, std::chrono::month{month}, std::chrono::day{1}};
    }

    /// The period of granularity `g` that contains this period's start date.
    Period convert(Granularity g) const { return containing(g, start()); }

    Period next() const { return Period(granularity_, ordinal_ + 1); }
    Period prev() const { return Period(granularity_, ordinal_ - 1); }

    std::string label() const {
        char buf[40];
        switch (granularity_) {
            case Granularity::monthly: std::snprintf(buf, sizeof buf, "%04d-%02d", year(), sub()); break;
            case Granularity::quarterly: std::snprintf(buf, sizeof buf, "%04d-Q%d", year(), sub()); break;
            case Granularity::yearly: std::snprintf(buf, sizeof buf, "%04d", year()); break;
        }
        return buf;
    }

    friend bool operator==(const Period&, const Period&) = default;
    friend auto operator<=>(const Period&, const Period&) = default;

private:
    Period(Granularity g, int ordinal) : granularity_(g), ordinal_(ordinal) {}

    Granularity granularity_ = Granularity::monthly;
    int ordinal_ = 0;
};

/// Inclusive period range. Both ends share a granularity.
struct Window {
    Period start;
    Period end;

    bool contains(const Period& p) const { return start <= p && p <= end; }

    Window convert(Granularity g) const { return {start.convert(g), end.convert(g)}; }

    std::string label() const { return start.label() + ".." + end.label(); }
};

}  // namespace climattn
