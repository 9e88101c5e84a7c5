#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpus.hpp"
#include "index.hpp"
#include "io.hpp"
#include "normgame.hpp"
#include "var.hpp"

namespace climattn::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr const char* tool_version = "climattn 0.1.0";

/// Stable process exit codes.
enum ExitCode : int {
    ok = 0,
    internal_error = 1,
    malformed_input = 2,
    date_violation = 3,
    index_failure = 4,
    estimation_failure = 5,
    invalid_game = 6,
};

struct PanelVariable {
    std::string name;
    std::optional<std::string> index;  // group name or "pooled"
    std::optional<fs::path> series;    // external period,value CSV
    bool normalize_mean100 = false;
};

struct RunConfig {
    std::optional<fs::path> documents;
    std::optional<fs::path> phrase_sets;
    Granularity granularity = Granularity::monthly;
    std::optional<Period> window_start;
    std::optional<Period> window_end;
    DateSanity sanity;

    std::optional<std::string> index_phrase_set;
    std::vector<std::string> index_groups;
    bool rescale_sd = false;

    Granularity panel_granularity = Granularity::quarterly;
    std::optional<fs::path> panel_csv;
    std::vector<PanelVariable> variables;

    int lags = 4;
    bool with_constant = true;

    std::optional<fs::path> game;
    std::optional<fs::path> fit;
    std::size_t steps = 40;
    std::optional<std::vector<double>> initial;

    fs::path out_dir = "out";
    std::string config_hash;

    std::optional<Window> window() const {
        if (!window_start && !window_end) return std::nullopt;
        if (!window_start || !window_end) throw ParseError("window needs both a start and an end");
        return Window{*window_start, *window_end};
    }
};

/// Flag values that override the config file.
struct Overrides {
    std::optional<std::string> out;
    std::optional<std::string> window_start;
    std::optional<std::string> window_end;
    std::optional<std::string> granularity;
    std::optional<int> lags;
    std::optional<std::string> documents;
    std::optional<std::string> phrases;
    std::optional<std::string> panel;
    std::optional<std::string> game;
    std::optional<std::string> fit;
    std::optional<std::size_t> steps;
};

/// FNV-1a, 64 bit, rendered as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

inline fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

inline std::string sanitize(const std::string& name) {
    std::string out;
    for (unsigned char c : name) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                          c == '-' || c == '_';
        out.push_back(keep ? static_cast<char>(c) : '_');
    }
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
}

}  // namespace detail

/// Builds the effective configuration. Relative paths in the file resolve
/// against its directory; relative flag paths resolve against the working
/// directory.
inline RunConfig load_config(const std::optional<fs::path>& config_path, const Overrides& ov) {
    json j = json::object();
    fs::path base = fs::current_path();
    if (config_path) {
        try {
            j = json::parse(io::read_file(*config_path));
        } catch (const json::exception& e) {
            throw ParseError(config_path->string() + ": " + e.what());
        }
        if (!j.is_object()) throw ParseError(config_path->string() + ": config must be a JSON object");
        base = config_path->parent_path().empty() ? fs::current_path() : config_path->parent_path();
    }
    const fs::path cwd = fs::current_path();

    // Flags win over file values.
    if (ov.window_start) j["window"]["start"] = *ov.window_start;
    if (ov.window_end) j["window"]["end"] = *ov.window_end;
    if (ov.granularity) j["granularity"] = *ov.granularity;
    if (ov.lags) j["var"]["lags"] = *ov.lags;
    if (ov.steps) j["simulate"]["steps"] = *ov.steps;

    json hashed = j;
    hashed.erase("output");
    RunConfig cfg;
    cfg.config_hash = fnv1a_hex(hashed.dump());

    try {
        if (j.contains("documents")) cfg.documents = detail::resolve(base, j["documents"].get<std::string>());
        if (j.contains("phrase_sets")) cfg.phrase_sets = detail::resolve(base, j["phrase_sets"].get<std::string>());
        if (j.contains("granularity")) cfg.granularity = parse_granularity(j["granularity"].get<std::string>());
        if (j.contains("window")) {
            const auto& w = j["window"];
            if (w.contains("start")) cfg.window_start = Period::parse(w["start"].get<std::string>());
            if (w.contains("end")) cfg.window_end = Period::parse(w["end"].get<std::string>());
        }
        if (j.contains("date_sanity")) {
            const auto& s = j["date_sanity"];
            if (s.contains("min")) cfg.sanity.min = parse_date(s["min"].get<std::string>());
            if (s.contains("max")) cfg.sanity.max = parse_date(s["max"].get<std::string>());
        }
        if (j.contains("index")) {
            const auto& ix = j["index"];
            if (ix.contains("phrase_set")) cfg.index_phrase_set = ix["phrase_set"].get<std::string>();
            if (ix.contains("groups")) cfg.index_groups = ix["groups"].get<std::vector<std::string>>();
            if (ix.contains("rescale_sd")) cfg.rescale_sd = ix["rescale_sd"].get<bool>();
        }
        if (j.contains("panel")) {
            const auto& pn = j["panel"];
            if (pn.contains("granularity")) cfg.panel_granularity = parse_granularity(pn["granularity"].get<std::string>());
            if (pn.contains("csv")) cfg.panel_csv = detail::resolve(base, pn["csv"].get<std::string>());
            if (pn.contains("variables")) {
                for (const auto& v : pn["variables"]) {
                    PanelVariable pv;
                    pv.name = v.at("name").get<std::string>();
                    if (v.contains("index")) pv.index = v["index"].get<std::string>();
                    if (v.contains("series")) pv.series = detail::resolve(base, v["series"].get<std::string>());
                    if (v.contains("normalize")) {
                        const auto n = v["normalize"].get<std::string>();
                        if (n != "mean100" && n != "none") throw ParseError("unknown normalize '" + n + "'");
                        pv.normalize_mean100 = n == "mean100";
                    }
                    if (pv.index.has_value() == pv.series.has_value())
                        throw ParseError("panel variable '" + pv.name + "' needs exactly one of index or series");
                    cfg.variables.push_back(std::move(pv));
                }
            }
        }
        if (j.contains("var")) {
            const auto& v = j["var"];
            if (v.contains("lags")) cfg.lags = v["lags"].get<int>();
            if (v.contains("constant")) cfg.with_constant = v["constant"].get<bool>();
        }
        if (j.contains("simulate")) {
            const auto& s = j["simulate"];
            if (s.contains("game")) cfg.game = detail::resolve(base, s["game"].get<std::string>());
            if (s.contains("fit")) cfg.fit = detail::resolve(base, s["fit"].get<std::string>());
            if (s.contains("steps")) cfg.steps = s["steps"].get<std::size_t>();
            if (s.contains("initial")) cfg.initial = s["initial"].get<std::vector<double>>();
        }
        if (j.contains("output")) cfg.out_dir = detail::resolve(base, j["output"].get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }

    if (ov.out) cfg.out_dir = detail::resolve(cwd, *ov.out);
    if (ov.documents) cfg.documents = detail::resolve(cwd, *ov.documents);
    if (ov.phrases) cfg.phrase_sets = detail::resolve(cwd, *ov.phrases);
    if (ov.panel) cfg.panel_csv = detail::resolve(cwd, *ov.panel);
    if (ov.game) cfg.game = detail::resolve(cwd, *ov.game);
    if (ov.fit) cfg.fit = detail::resolve(cwd, *ov.fit);

    if (cfg.lags < 1 || cfg.lags > 8) throw ParseError("lag order must be between 1 and 8");
    if (auto w = cfg.window()) {
        if (w->start.granularity() != w->end.granularity())
            throw ParseError("window start and end must use the same period format");
        if (!(w->start < w->end)) throw ParseError("window start must precede its end");
    }
    return cfg;
}

/// Console sinks for summaries (stdout) and diagnostics (stderr).
struct Streams {
    std::ostream& out;
    std::ostream& err;
};

inline io::Metadata metadata(const RunConfig& cfg) {
    const auto w = cfg.window();
    return io::Metadata{{{"tool", tool_version}, {"config_hash", cfg.config_hash}, {"window", w ? w->label() : "full"}}};
}

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

struct CorpusInputs {
    std::vector<Document> docs;
    std::vector<PhraseSet> sets;
    std::size_t primary_set = 0;

    const PhraseSet& primary() const { return sets.at(primary_set); }
};

inline CorpusInputs load_corpus(const RunConfig& cfg) {
    if (!cfg.documents) throw ParseError("no documents CSV configured");
    if (!cfg.phrase_sets) throw ParseError("no phrase sets configured");
    CorpusInputs in{io::load_documents(*cfg.documents), io::load_phrase_sets(*cfg.phrase_sets), 0};
    if (cfg.index_phrase_set) {
        auto it = std::find_if(in.sets.begin(), in.sets.end(),
                               [&](const PhraseSet& s) { return s.name == *cfg.index_phrase_set; });
        if (it == in.sets.end()) throw ParseError("phrase set '" + *cfg.index_phrase_set + "' is not defined");
        in.primary_set = static_cast<std::size_t>(it - in.sets.begin());
    }
    check_dates(in.docs, cfg.sanity);
    return in;
}

/// Outlet -> group, requiring each outlet to belong to a single group.
inline std::map<std::string, std::string> outlet_groups(const std::vector<Document>& docs) {
    std::map<std::string, std::string> groups;
    for (const auto& d : docs) {
        auto [it, inserted] = groups.emplace(d.outlet, d.group);
        if (!inserted && it->second != d.group)
            throw ParseError("outlet '" + d.outlet + "' appears in groups '" + it->second + "' and '" + d.group + "'");
    }
    return groups;
}

/// Per-group indices plus the pooled index, keyed by group name.
inline std::map<std::string, IndexSeries> compute_indices(const RunConfig& cfg, const CorpusInputs& in) {
    const auto series = aggregate(in.docs, in.primary(), cfg.granularity, cfg.sanity);
    const auto groups = outlet_groups(in.docs);
    const auto window = cfg.window();

    std::map<std::string, std::vector<ShareSeries>> members;
    std::vector<ShareSeries> pooled;
    for (const auto& [outlet, ms] : series) {
        auto s = from_mentions(ms);
        const auto& g = groups.at(outlet);
        const bool wanted = cfg.index_groups.empty() ||
                            std::find(cfg.index_groups.begin(), cfg.index_groups.end(), g) != cfg.index_groups.end();
        if (!g.empty() && wanted) members[g].push_back(s);
        pooled.push_back(std::move(s));
    }
    for (const auto& g : cfg.index_groups)
        if (!members.count(g)) throw ParseError("index group '" + g + "' has no documents");

    auto make = [&](const std::vector<ShareSeries>& ss, const std::string& label) {
        if (ss.size() == 1) {
            auto idx = normalize_mean100(ss.front(), window, cfg.rescale_sd);
            idx.label = label;
            return idx;
        }
        return build_index(ss, window, label);
    };
    std::map<std::string, IndexSeries> out;
    for (const auto& [g, ss] : members) out.emplace(g, make(ss, g));
    if (!pooled.empty()) out.insert_or_assign("pooled", make(pooled, "pooled"));
    return out;
}

inline Panel restrict_panel(const Panel& panel, const std::optional<Window>& window) {
    if (!window) return panel;
    const Window w = window->convert(panel.granularity);
    Panel out{panel.variables, panel.granularity, {}, {}};
    std::vector<Eigen::Index> keep;
    for (std::size_t r = 0; r < panel.periods.size(); ++r)
        if (w.contains(panel.periods[r])) keep.push_back(static_cast<Eigen::Index>(r));
    out.data.resize(static_cast<Eigen::Index>(keep.size()), panel.data.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        out.periods.push_back(panel.periods[static_cast<std::size_t>(keep[i])]);
        out.data.row(static_cast<Eigen::Index>(i)) = panel.data.row(keep[i]);
    }
    return out;
}

/// Aligns configured variables on the panel granularity. Without a window the
/// panel spans the periods where every variable is defined; any hole inside
/// the span is an error.
inline Panel build_panel(const RunConfig& cfg) {
    if (cfg.variables.empty()) throw ParseError("no panel variables configured");
    std::optional<std::map<std::string, IndexSeries>> indices;
    const auto window = cfg.window();

    std::vector<ShareSeries> columns;
    for (const auto& v : cfg.variables) {
        ShareSeries s;
        if (v.index) {
            if (!indices) indices = compute_indices(cfg, load_corpus(cfg));
            auto it = indices->find(*v.index);
            if (it == indices->end()) throw ParseError("panel variable '" + v.name + "' refers to unknown index '" + *v.index + "'");
            s = ShareSeries{v.name, it->second.granularity, it->second.rows};
        } else {
            s = io::load_series(*v.series, v.name);
        }
        if (static_cast<int>(s.granularity) > static_cast<int>(cfg.panel_granularity))
            throw ParseError("panel variable '" + v.name + "' is coarser than the panel granularity");
        if (s.granularity != cfg.panel_granularity) s = resample_mean(s, cfg.panel_granularity);
        if (v.normalize_mean100) {
            const auto idx = normalize_mean100(s, window);
            s.rows = idx.rows;
        }
        columns.push_back(std::move(s));
    }

    std::vector<std::map<Period, double>> lookup(columns.size());
    std::optional<Period> first, last;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        std::optional<Period> lo, hi;
        for (const auto& r : columns[c].rows) {
            if (!r.value) continue;
            lookup[c][r.period] = *r.value;
            if (!lo) lo = r.period;
            hi = r.period;
        }
        if (!lo) throw UnbalancedPanel("panel variable '" + columns[c].label + "' has no values");
        if (!first || *first < *lo) first = lo;
        if (!last || *hi < *last) last = hi;
    }
    if (window) {
        const Window w = window->convert(cfg.panel_granularity);
        first = w.start;
        last = w.end;
    }
    if (*last < *first) throw UnbalancedPanel("panel variables do not overlap");

    Panel panel;
    panel.granularity = cfg.panel_granularity;
    for (const auto& v : cfg.variables) panel.variables.push_back(v.name);
    std::vector<std::vector<double>> rows;
    for (Period p = *first; p <= *last; p = p.next()) {
        std::vector<double> row;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto it = lookup[c].find(p);
            if (it == lookup[c].end())
                throw UnbalancedPanel("panel variable '" + columns[c].label + "' is undefined at " + p.label());
            row.push_back(it->second);
        }
        panel.periods.push_back(p);
        rows.push_back(std::move(row));
    }
    panel.data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            panel.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return panel;
}

inline Panel obtain_panel(const RunConfig& cfg) {
    if (cfg.panel_csv) return restrict_panel(io::load_panel(*cfg.panel_csv), cfg.window());
    return build_panel(cfg);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline int cmd_count(const RunConfig& cfg, Streams io_) {
    const auto in = load_corpus(cfg);
    const auto meta = metadata(cfg);
    const auto series = aggregate(in.docs, in.primary(), cfg.granularity, cfg.sanity);

    std::set<std::string> used;
    for (const auto& [outlet, ms] : series) {
        const auto file = detail::sanitize(outlet);
        if (!used.insert(file).second) throw ParseError("outlets map to the same file name: " + file);
        auto m = meta;
        m.entries.emplace_back("phrase_set", in.primary().name);
        m.entries.emplace_back("granularity", std::string(to_string(cfg.granularity)));
        io::write_file(cfg.out_dir / "counts" / (file + ".csv"), io::mention_csv(ms, m));
    }
    const auto yearly = count_table(in.docs, in.sets, Granularity::yearly, std::nullopt, cfg.sanity);
    io::write_file(cfg.out_dir / "count_table.csv", io::count_table_csv(yearly, meta));
    const auto by_period = count_table(in.docs, in.sets, cfg.granularity, std::nullopt, cfg.sanity);
    auto m = meta;
    m.entries.emplace_back("granularity", std::string(to_string(cfg.granularity)));
    io::write_file(cfg.out_dir / "period_table.csv", io::period_table_csv(by_period, m));

    io_.out << "count: " << in.docs.size() << " documents, " << series.size() << " outlets, " << in.sets.size()
            << " phrase sets\n";
    return ok;
}

inline int cmd_index(const RunConfig& cfg, Streams io_) {
    const auto in = load_corpus(cfg);
    const auto indices = compute_indices(cfg, in);
    const auto meta = metadata(cfg);
    for (const auto& [name, idx] : indices)
        io::write_file(cfg.out_dir / "index" / (detail::sanitize(name) + ".csv"), io::index_csv(idx, meta));
    io_.out << "index: wrote " << indices.size() << " indices (" << in.primary().name << ")\n";
    return ok;
}

inline int cmd_panel(const RunConfig& cfg, Streams io_) {
    const auto panel = obtain_panel(cfg);
    validate(panel);
    io::write_file(cfg.out_dir / "panel" / "panel.csv", io::panel_csv(panel, metadata(cfg)));
    io_.out << "panel: " << panel.rows() << " periods x " << panel.vars() << " variables\n";
    return ok;
}

inline int cmd_estimate(const RunConfig& cfg, Streams io_) {
    const auto panel = obtain_panel(cfg);
    const auto fit = estimate_ols(panel, cfg.lags, cfg.with_constant);
    const auto rows = format_table(fit);
    const auto meta = metadata(cfg);
    io::write_file(cfg.out_dir / "var" / "fit.json", io::fit_to_json(fit, meta).dump(2) + "\n");
    io::write_file(cfg.out_dir / "var" / "table.csv", io::table_csv(rows, meta));
    io::write_file(cfg.out_dir / "var" / "table.txt", io::table_text(rows, meta));

    const auto stab = stability(fit);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", stab.radius);
    io_.out << "estimate: k=" << fit.spec.k << " p=" << fit.spec.p << " T_eff=" << fit.t_eff << " dof=" << fit.dof
            << "\n";
    io_.out << "stability radius: " << buf << (stab.stable ? " (stable)" : " (not stable)") << "\n";
    for (int x = 1; x <= fit.spec.p; ++x) {
        const std::string prefix = "AR{" + std::to_string(x) + "}";
        std::string list;
        int count = 0;
        for (const auto& r : rows) {
            if (r.label.rfind(prefix, 0) == 0 && !r.stars.empty()) {
                list += " " + r.label + r.stars;
                ++count;
            }
        }
        io_.out << "lag " << x << ": " << count << " significant" << list << "\n";
    }
    return ok;
}

inline GroupGame obtain_game(const RunConfig& cfg, const fs::path& fallback_fit) {
    if (cfg.game) {
        json j;
        try {
            j = json::parse(io::read_file(*cfg.game));
        } catch (const json::exception& e) {
            throw ParseError(cfg.game->string() + ": " + e.what());
        }
        return io::game_from_json(j);
    }
    const fs::path fit_path = cfg.fit ? *cfg.fit : fallback_fit;
    json j;
    try {
        j = json::parse(io::read_file(fit_path));
    } catch (const json::exception& e) {
        throw ParseError(fit_path.string() + ": " + e.what());
    }
    const auto fit = io::fit_from_json(j);
    if (fit.spec.p != 1) throw InvalidGame("only a VAR(1) fit maps to a game (fit has p=" + std::to_string(fit.spec.p) + ")");
    if (!fit.spec.with_constant) throw InvalidGame("the fit has no constants to map to intrinsic interest");
    return from_var_params(fit.coef.constant, fit.coef.lag.front(), fit.variables);
}

inline int cmd_simulate(const RunConfig& cfg, Streams io_) {
    const auto game = obtain_game(cfg, cfg.out_dir / "var" / "fit.json");
    validate(game);
    VectorXd a0 = VectorXd::Zero(game.size());
    if (cfg.initial) {
        if (static_cast<Eigen::Index>(cfg.initial->size()) != game.size())
            throw InvalidGame("initial condition has " + std::to_string(cfg.initial->size()) + " values for " +
                              std::to_string(game.size()) + " groups");
        a0 = Eigen::Map<const VectorXd>(cfg.initial->data(), game.size());
    }
    const auto tr = simulate(game, a0, cfg.steps);
    const auto ss = steady_state(game);

    auto meta = metadata(cfg);
    meta.entries.emplace_back("steps", std::to_string(cfg.steps));
    if (tr.diverged) meta.entries.emplace_back("diverged_at", std::to_string(*tr.diverged_at));
    io::write_file(cfg.out_dir / "sim" / "trajectory.csv", io::trajectory_csv(tr, game.group_names, meta));

    auto sm = metadata(cfg);
    sm.entries.emplace_back("spectral_radius", io::format_double(ss.spectral_radius));
    sm.entries.emplace_back("status", ss.converges() ? "steady_state" : "divergent");
    std::string body = sm.render() + csv::join({"group", "steady_state"});
    if (ss.point)
        for (Eigen::Index i = 0; i < game.size(); ++i)
            body += csv::join({game.group_names[static_cast<std::size_t>(i)], io::format_double((*ss.point)[i])});
    io::write_file(cfg.out_dir / "sim" / "steady_state.csv", body);

    io_.out << "simulate: " << tr.actions.size() - 1 << " steps" << (tr.diverged ? " (diverged)" : "") << "\n";
    io_.out << "spectral radius: " << io::format_double(ss.spectral_radius) << "\n";
    if (ss.point) {
        io_.out << "steady state:";
        for (Eigen::Index i = 0; i < game.size(); ++i) io_.out << " " << io::format_double((*ss.point)[i]);
        io_.out << "\n";
    } else {
        io_.out << "steady state: divergent\n";
    }
    return ok;
}

/// count -> index -> panel -> estimate, then simulate when a game or fit is configured.
inline int cmd_report(const RunConfig& cfg, Streams io_) {
    if (cfg.documents && cfg.phrase_sets) {
        cmd_count(cfg, io_);
        cmd_index(cfg, io_);
    }
    if (cfg.panel_csv || !cfg.variables.empty()) {
        cmd_panel(cfg, io_);
        cmd_estimate(cfg, io_);
    }
    if (cfg.game || cfg.fit || (cfg.lags == 1 && (cfg.panel_csv || !cfg.variables.empty()))) cmd_simulate(cfg, io_);
    return ok;
}

/// Runs a command and maps library errors onto exit codes.
inline int run_guarded(const std::function<int()>& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const DateOutOfRange& e) {
        err << "error: " << e.what() << "\n";
        return date_violation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return malformed_input;
    } catch (const ZeroVariance& e) {
        err << "error: zero variance: " << e.what() << "\n";
        return index_failure;
    } catch (const NonPositiveMean& e) {
        err << "error: non-positive mean: " << e.what() << "\n";
        return index_failure;
    } catch (const InsufficientData& e) {
        err << "error: insufficient data: " << e.what() << "\n";
        return index_failure;
    } catch (const InsufficientOverlap& e) {
        err << "error: " << e.what() << "\n";
        return index_failure;
    } catch (const SingularDesign& e) {
        err << "error: singular design: " << e.what() << "\n";
        return estimation_failure;
    } catch (const InsufficientSample& e) {
        err << "error: insufficient sample: " << e.what() << "\n";
        return estimation_failure;
    } catch (const UnbalancedPanel& e) {
        err << "error: unbalanced panel: " << e.what() << "\n";
        return estimation_failure;
    } catch (const InvalidGame& e) {
        err << "error: invalid game: " << e.what() << "\n";
        return invalid_game;
    } catch (const SingularSystem& e) {
        err << "error: " << e.what() << "\n";
        return invalid_game;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return internal_error;
    }
}

}  // namespace climattn::pipeline
