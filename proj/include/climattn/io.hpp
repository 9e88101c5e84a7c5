#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "index.hpp"
#include "normgame.hpp"
#include "var.hpp"

namespace climattn::io {

using nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file " + path.string());
    out << content;
}

/// Shortest decimal form that round-trips.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline double parse_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw ParseError("invalid number '" + s + "'", line);
    return v;
}

/// `# key: value` lines written at the top of every text output.
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;

    std::string render() const {
        std::string out;
        for (const auto& [k, v] : entries) out += "# " + k + ": " + v + "\n";
        return out;
    }

    json to_json() const {
        json j = json::object();
        for (const auto& [k, v] : entries) j[k] = v;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Documents and phrase sets
// ---------------------------------------------------------------------------

inline std::vector<Document> parse_documents(std::string_view text) {
    const auto records = csv::parse(text);
    if (records.empty()) throw ParseError("documents CSV is missing its header row", 1);
    const std::vector<std::string> header{"id", "date", "outlet", "group", "text"};
    if (records.front().fields != header)
        throw ParseError("documents CSV header must be id,date,outlet,group,text", records.front().line);
    std::vector<Document> docs;
    docs.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size())
            throw ParseError("expected 5 fields, found " + std::to_string(rec.fields.size()), rec.line);
        Document d;
        d.id = rec.fields[0];
        try {
            d.date = parse_date(rec.fields[1]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), rec.line);
        }
        d.outlet = rec.fields[2];
        if (d.outlet.empty()) throw ParseError("document '" + d.id + "' has an empty outlet", rec.line);
        d.group = rec.fields[3];
        d.text = rec.fields[4];
        docs.push_back(std::move(d));
    }
    return docs;
}

inline std::vector<Document> load_documents(const std::filesystem::path& path) {
    const auto text = read_file(path);
    try {
        return parse_documents(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

inline PhraseSet phrase_set_from_json(const json& j) {
    PhraseSet ps;
    ps.name = j.at("name").get<std::string>();
    ps.phrases = j.at("phrases").get<std::vector<std::string>>();
    if (j.contains("match_mode")) ps.match_mode = parse_match_mode(j.at("match_mode").get<std::string>());
    validate(ps);
    return ps;
}

/// JSON list of `{name, phrases[], match_mode}`, or plain text with one
/// `name: phrase; phrase` per line.
inline std::vector<PhraseSet> parse_phrase_sets(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    std::vector<PhraseSet> sets;
    if (first != std::string_view::npos && (text[first] == '[' || text[first] == '{')) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("phrase sets JSON: ") + e.what());
        }
        if (j.is_object()) j = json::array({j});
        try {
            for (const auto& item : j) sets.push_back(phrase_set_from_json(item));
        } catch (const json::exception& e) {
            throw ParseError(std::string("phrase sets JSON: ") + e.what());
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t lineno = 0;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            const auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError("expected 'name: phrase; phrase'", lineno);
            PhraseSet ps;
            ps.name = trim(line.substr(0, colon));
            std::istringstream rest(line.substr(colon + 1));
            std::string phrase;
            while (std::getline(rest, phrase, ';')) {
                phrase = trim(phrase);
                if (!phrase.empty()) ps.phrases.push_back(phrase);
            }
            try {
                validate(ps);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno);
            }
            sets.push_back(std::move(ps));
        }
    }
    if (sets.empty()) throw ParseError("no phrase sets defined");
    return sets;
}

inline std::vector<PhraseSet> load_phrase_sets(const std::filesystem::path& path) {
    try {
        return parse_phrase_sets(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

// ---------------------------------------------------------------------------
// Count outputs
// ---------------------------------------------------------------------------

inline std::string mention_csv(const MentionSeries& s, const Metadata& meta = {}) {
    std::string out = meta.render();
    out += csv::join({"outlet", "period", "n_docs", "n_matching_docs", "n_occurrences", "share"});
    for (const auto& r : s.rows)
        out += csv::join({s.outlet, r.period.label(), std::to_string(r.n_docs), std::to_string(r.n_matching_docs),
                          std::to_string(r.n_occurrences), r.share ? format_double(*r.share) : ""});
    return out;
}

/// Phrase sets as rows, periods as columns.
inline std::string count_table_csv(const CountTable& t, const Metadata& meta = {}) {
    std::string out = meta.render();
    std::vector<std::string> header{"phrase_set"};
    for (const auto& p : t.periods) header.push_back(p.label());
    out += csv::join(header);
    for (std::size_t s = 0; s < t.phrase_sets.size(); ++s) {
        std::vector<std::string> row{t.phrase_sets[s]};
        for (auto c : t.counts[s]) row.push_back(std::to_string(c));
        out += csv::join(row);
    }
    return out;
}

/// Periods as rows with the document total `n` followed by one column per set.
inline std::string period_table_csv(const CountTable& t, const Metadata& meta = {}) {
    std::string out = meta.render();
    std::vector<std::string> header{"period", "n"};
    header.insert(header.end(), t.phrase_sets.begin(), t.phrase_sets.end());
    out += csv::join(header);
    for (std::size_t p = 0; p < t.periods.size(); ++p) {
        std::vector<std::string> row{t.periods[p].label(), std::to_string(t.n_docs[p])};
        for (const auto& counts : t.counts) row.push_back(std::to_string(counts[p]));
        out += csv::join(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

inline ShareSeries parse_series(std::string_view text, std::string label) {
    const auto records = csv::parse(text);
    if (records.empty() || records.front().fields.size() != 2 || records.front().fields[0] != "period")
        throw ParseError("series CSV header must be period,value", records.empty() ? 1 : records.front().line);
    ShareSeries s{std::move(label), Granularity::monthly, {}};
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 2) throw ParseError("expected 2 fields", rec.line);
        Period p;
        try {
            p = Period::parse(rec.fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), rec.line);
        }
        if (r == 1) s.granularity = p.granularity();
        if (p.granularity() != s.granularity) throw ParseError("mixed period granularities", rec.line);
        if (!s.rows.empty() && !(s.rows.back().period < p)) throw ParseError("periods must increase", rec.line);
        std::optional<double> v;
        if (!rec.fields[1].empty()) v = parse_double(rec.fields[1], rec.line);
        s.rows.push_back({p, v});
    }
    return s;
}

inline ShareSeries load_series(const std::filesystem::path& path, std::string label) {
    try {
        return parse_series(read_file(path), std::move(label));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

inline std::string series_csv(const std::vector<SeriesRow>& rows, const Metadata& meta = {}) {
    std::string out = meta.render();
    out += csv::join({"period", "value"});
    for (const auto& r : rows) out += csv::join({r.period.label(), r.value ? format_double(*r.value) : ""});
    return out;
}

inline std::string index_csv(const IndexSeries& s, Metadata meta = {}) {
    meta.entries.emplace_back("index", s.label);
    meta.entries.emplace_back("normalization_window", s.normalization_window.label());
    std::string sources;
    for (std::size_t i = 0; i < s.sources.size(); ++i) sources += (i ? ";" : "") + s.sources[i];
    meta.entries.emplace_back("sources", sources);
    return series_csv(s.rows, meta);
}

// ---------------------------------------------------------------------------
// Game and trajectory
// ---------------------------------------------------------------------------

inline GroupGame game_from_json(const json& j) {
    GroupGame g;
    try {
        const auto b = j.at("b").get<std::vector<double>>();
        const auto c = j.at("c").get<std::vector<double>>();
        const auto lambda = j.at("lambda").get<std::vector<std::vector<double>>>();
        if (j.contains("groups")) g.group_names = j.at("groups").get<std::vector<std::string>>();
        const auto r = static_cast<Eigen::Index>(b.size());
        g.b = Eigen::Map<const VectorXd>(b.data(), r);
        g.c = Eigen::Map<const VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
        g.lambda.resize(static_cast<Eigen::Index>(lambda.size()), r);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            if (static_cast<Eigen::Index>(lambda[i].size()) != r)
                throw InvalidGame("lambda row " + std::to_string(i + 1) + " has the wrong length");
            for (Eigen::Index jj = 0; jj < r; ++jj) g.lambda(static_cast<Eigen::Index>(i), jj) = lambda[i][static_cast<std::size_t>(jj)];
        }
    } catch (const json::exception& e) {
        throw InvalidGame(std::string("game JSON: ") + e.what());
    }
    if (g.group_names.empty())
        for (Eigen::Index i = 0; i < g.b.size(); ++i) g.group_names.push_back("group" + std::to_string(i + 1));
    validate(g);
    return g;
}

inline json game_to_json(const GroupGame& g) {
    json lambda = json::array();
    for (Eigen::Index i = 0; i < g.lambda.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < g.lambda.cols(); ++j) row.push_back(g.lambda(i, j));
        lambda.push_back(row);
    }
    return json{{"groups", g.group_names},
                {"b", std::vector<double>(g.b.data(), g.b.data() + g.b.size())},
                {"c", std::vector<double>(g.c.data(), g.c.data() + g.c.size())},
                {"lambda", lambda}};
}

inline std::string trajectory_csv(const Trajectory& tr, const std::vector<std::string>& names,
                                  const Metadata& meta = {}) {
    std::string out = meta.render();
    std::vector<std::string> header{"t"};
    header.insert(header.end(), names.begin(), names.end());
    out += csv::join(header);
    for (std::size_t t = 0; t < tr.actions.size(); ++t) {
        std::vector<std::string> row{std::to_string(t)};
        for (Eigen::Index i = 0; i < tr.actions[t].size(); ++i) row.push_back(format_double(tr.actions[t][i]));
        out += csv::join(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Panel and fit
// ---------------------------------------------------------------------------

inline Panel parse_panel(std::string_view text) {
    const auto records = csv::parse(text);
    if (records.empty() || records.front().fields.size() < 2 || records.front().fields[0] != "period")
        throw ParseError("panel CSV header must be period,<var1>,...", records.empty() ? 1 : records.front().line);
    Panel panel;
    panel.variables.assign(records.front().fields.begin() + 1, records.front().fields.end());
    const auto k = static_cast<Eigen::Index>(panel.variables.size());
    panel.data.resize(static_cast<Eigen::Index>(records.size() - 1), k);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (static_cast<Eigen::Index>(rec.fields.size()) != k + 1)
            throw ParseError("expected " + std::to_string(k + 1) + " fields", rec.line);
        Period p;
        try {
            p = Period::parse(rec.fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), rec.line);
        }
        if (r == 1) panel.granularity = p.granularity();
        if (p.granularity() != panel.granularity) throw ParseError("mixed period granularities", rec.line);
        if (!panel.periods.empty() && p != panel.periods.back().next())
            throw ParseError("panel periods must be contiguous", rec.line);
        panel.periods.push_back(p);
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto& cell = rec.fields[static_cast<std::size_t>(j + 1)];
            if (cell.empty()) throw ParseError("panel has an undefined value", rec.line);
            panel.data(static_cast<Eigen::Index>(r - 1), j) = parse_double(cell, rec.line);
        }
    }
    return panel;
}

inline Panel load_panel(const std::filesystem::path& path) {
    try {
        return parse_panel(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

inline std::string panel_csv(const Panel& panel, const Metadata& meta = {}) {
    std::string out = meta.render();
    std::vector<std::string> header{"period"};
    header.insert(header.end(), panel.variables.begin(), panel.variables.end());
    out += csv::join(header);
    for (Eigen::Index r = 0; r < panel.data.rows(); ++r) {
        std::vector<std::string> row{panel.periods[static_cast<std::size_t>(r)].label()};
        for (Eigen::Index j = 0; j < panel.data.cols(); ++j) row.push_back(format_double(panel.data(r, j)));
        out += csv::join(row);
    }
    return out;
}

namespace detail {

inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json matrix_json(const MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json coefficients_json(const VarCoefficients& c) {
    json constant = json::array();
    for (Eigen::Index i = 0; i < c.constant.size(); ++i) constant.push_back(number(c.constant[i]));
    json lags = json::array();
    for (const auto& m : c.lag) lags.push_back(matrix_json(m));
    return {{"constant", constant}, {"lags", lags}};
}

inline double json_number(const json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

inline MatrixXd matrix_from_json(const json& rows) {
    MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = json_number(rows[i][j]);
    return m;
}

inline VarCoefficients coefficients_from_json(const json& j) {
    VarCoefficients c;
    const auto& constant = j.at("constant");
    c.constant.resize(static_cast<Eigen::Index>(constant.size()));
    for (std::size_t i = 0; i < constant.size(); ++i) c.constant[static_cast<Eigen::Index>(i)] = json_number(constant[i]);
    for (const auto& m : j.at("lags")) c.lag.push_back(matrix_from_json(m));
    return c;
}

}  // namespace detail

/// Full-precision fit. Coefficient arrays use the lags[x][z][y] layout.
inline json fit_to_json(const VarFit& fit, const Metadata& meta = {}) {
    const auto stab = stability(fit);
    json j{{"meta", meta.to_json()},
           {"variables", fit.variables},
           {"k", fit.spec.k},
           {"p", fit.spec.p},
           {"with_constant", fit.spec.with_constant},
           {"t_eff", fit.t_eff},
           {"dof", fit.dof},
           {"rcond", fit.rcond},
           {"stability_radius", stab.radius},
           {"stable", stab.stable},
           {"coefficients", detail::coefficients_json(fit.coef)},
           {"standard_errors", detail::coefficients_json(fit.se)},
           {"tstat", detail::coefficients_json(fit.tstat)},
           {"pvalue", detail::coefficients_json(fit.pvalue)},
           {"sigma", detail::matrix_json(fit.sigma)}};
    j["sample_start"] = fit.sample_start ? json(fit.sample_start->label()) : json(nullptr);
    j["sample_end"] = fit.sample_end ? json(fit.sample_end->label()) : json(nullptr);
    return j;
}

/// Reads the fields needed to forecast or convert a fit; residuals are not stored.
inline VarFit fit_from_json(const json& j) {
    VarFit fit;
    try {
        fit.variables = j.at("variables").get<std::vector<std::string>>();
        fit.spec = {j.at("k").get<int>(), j.at("p").get<int>(), j.at("with_constant").get<bool>()};
        fit.t_eff = j.at("t_eff").get<Eigen::Index>();
        fit.dof = j.at("dof").get<Eigen::Index>();
        fit.rcond = j.at("rcond").get<double>();
        fit.coef = detail::coefficients_from_json(j.at("coefficients"));
        fit.se = detail::coefficients_from_json(j.at("standard_errors"));
        fit.tstat = detail::coefficients_from_json(j.at("tstat"));
        fit.pvalue = detail::coefficients_from_json(j.at("pvalue"));
        fit.sigma = detail::matrix_from_json(j.at("sigma"));
        if (!j.at("sample_start").is_null()) fit.sample_start = Period::parse(j.at("sample_start").get<std::string>());
        if (!j.at("sample_end").is_null()) fit.sample_end = Period::parse(j.at("sample_end").get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("fit JSON: ") + e.what());
    }
    return fit;
}

inline std::string table_csv(const std::vector<TableRow>& rows, const Metadata& meta = {}) {
    std::string out = meta.render();
    out += csv::join({"label", "Value", "Standard Error", "TStatistic", "PValue"});
    for (const auto& r : rows) out += csv::join(render_cells(r));
    return out;
}

inline std::string table_text(const std::vector<TableRow>& rows, const Metadata& meta = {}) {
    return meta.render() + render_text_table(rows);
}

}  // namespace climattn::io
