// climattn: documents -> mention counts -> attention indices -> VAR panel
// -> estimation and norm-game simulation.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "climattn.hpp"

namespace pl = climattn::pipeline;

int main(int argc, char** argv) {
    CLI::App app{"Keyword-attention indices, VAR estimation and norm-game simulation"};
    app.require_subcommand(1);

    std::optional<std::string> config;
    pl::Overrides ov;
    app.add_option("--config", config, "JSON run configuration");
    app.add_option("--out", ov.out, "output directory");
    app.add_option("--window-start", ov.window_start, "window start period (YYYY-MM, YYYY-Qn or YYYY)");
    app.add_option("--window-end", ov.window_end, "window end period");
    app.add_option("--granularity", ov.granularity, "counting granularity: monthly, quarterly or yearly");
    app.add_option("--lags", ov.lags, "VAR lag order (1..8)");
    app.add_option("--documents", ov.documents, "documents CSV (id,date,outlet,group,text)");
    app.add_option("--phrases", ov.phrases, "phrase sets (JSON or plain text)");
    app.add_option("--panel", ov.panel, "panel CSV (period,<var1>,...)");
    app.add_option("--game", ov.game, "game JSON {groups,b,c,lambda}");
    app.add_option("--fit", ov.fit, "VAR(1) fit JSON to convert into a game");
    app.add_option("--steps", ov.steps, "simulation steps");

    using Command = int (*)(const pl::RunConfig&, pl::Streams);
    const std::pair<const char*, Command> commands[] = {
        {"count", pl::cmd_count},       {"index", pl::cmd_index},       {"panel", pl::cmd_panel},
        {"estimate", pl::cmd_estimate}, {"simulate", pl::cmd_simulate}, {"report", pl::cmd_report},
    };
    const char* help[] = {
        "per-outlet mention counts, yearly count table and period table",
        "per-group and pooled mean-100 attention indices",
        "balanced panel of configured variables",
        "VAR(p) OLS fit with coefficient tables",
        "norm-game trajectory and steady state",
        "all stages end to end",
    };
    Command selected = nullptr;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        auto* sub = app.add_subcommand(commands[i].first, help[i]);
        sub->fallthrough();
        sub->callback([&selected, fn = commands[i].second] { selected = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : pl::malformed_input;
    }

    return pl::run_guarded(
        [&] {
            const auto cfg = pl::load_config(config ? std::optional<std::filesystem::path>(*config) : std::nullopt, ov);
            return selected(cfg, pl::Streams{std::cout, std::cerr});
        },
        std::cerr);
}
