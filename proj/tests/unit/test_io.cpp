#include <gtest/gtest.h>

#include <random>

#include "climattn/io.hpp"

using namespace climattn;

namespace {

std::size_t error_line(auto&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(Documents, ParsesQuotedText) {
    const auto docs = io::parse_documents(
        "id,date,outlet,group,text\n"
        "a,1997-01-02,ECB,central_bank,\"Tax, \"\"quoted\"\"\nnext line\"\r\n"
        "b,2001-12-31,El País,media,plain\n");
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_EQ(docs[0].text, "Tax, \"quoted\"\nnext line");
    EXPECT_EQ(docs[1].outlet, "El País");
    EXPECT_EQ(docs[1].date, parse_date("2001-12-31"));
}

TEST(Documents, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_line([] { io::parse_documents("id,date,outlet,group,text\na,1997-13-01,x,g,t\n"); }), 2u);
    EXPECT_EQ(error_line([] { io::parse_documents("id,date,outlet,group,text\na,1997-01-01,x,g,t\nb,1997-01-01,x\n"); }), 3u);
    EXPECT_EQ(error_line([] { io::parse_documents("id,date,outlet,group,text\na,1997-01-01,,g,t\n"); }), 2u);
    EXPECT_EQ(error_line([] { io::parse_documents("id,when,outlet,group,text\n"); }), 1u);
    EXPECT_THROW(io::parse_documents(""), ParseError);
    EXPECT_TRUE(io::parse_documents("id,date,outlet,group,text\n").empty());
}

TEST(Documents, MissingFileNamesPath) {
    try {
        io::load_documents("/nonexistent/docs.csv");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/docs.csv"), std::string::npos);
    }
}

TEST(PhraseSets, JsonAndText) {
    const auto j = io::parse_phrase_sets(R"([{"name":"climate","phrases":["climate change","global warming"]},
        {"name":"ineq","phrases":["inequality"],"match_mode":"count_occurrences"}])");
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0].phrases[1], "global warming");
    EXPECT_EQ(j[0].match_mode, MatchMode::contains_document);
    EXPECT_EQ(j[1].match_mode, MatchMode::count_occurrences);

    const auto single = io::parse_phrase_sets(R"({"name":"tax","phrases":["tax"]})");
    ASSERT_EQ(single.size(), 1u);

    const auto t = io::parse_phrase_sets("# comment\nclimate: climate change ; global warming\n\ntax: tax\n");
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0].phrases, (std::vector<std::string>{"climate change", "global warming"}));
    EXPECT_EQ(t[1].name, "tax");

    EXPECT_EQ(error_line([] { io::parse_phrase_sets("a: x\nno colon here\n"); }), 2u);
    EXPECT_EQ(error_line([] { io::parse_phrase_sets("a: x\nb: ;\n"); }), 2u);
    EXPECT_THROW(io::parse_phrase_sets("[{\"name\":\"a\"}]"), ParseError);
    EXPECT_THROW(io::parse_phrase_sets("[{\"name\":\"a\",\"phrases\":[\"x\"],\"match_mode\":\"bogus\"}]"), ParseError);
    EXPECT_THROW(io::parse_phrase_sets("\n"), ParseError);
}

TEST(Series, RoundTrip) {
    const std::vector<SeriesRow> rows{{Period::parse("2001-Q1"), 0.1},
                                      {Period::parse("2001-Q2"), std::nullopt},
                                      {Period::parse("2001-Q3"), 1.0 / 3.0}};
    io::Metadata meta{{{"tool", "t"}}};
    const auto text = io::series_csv(rows, meta);
    EXPECT_EQ(text.substr(0, 10), "# tool: t\n");
    const auto back = io::parse_series(text, "x");
    ASSERT_EQ(back.rows.size(), 3u);
    EXPECT_EQ(back.granularity, Granularity::quarterly);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back.rows[i].period, rows[i].period);
        EXPECT_EQ(back.rows[i].value, rows[i].value);
    }
    EXPECT_EQ(error_line([] { io::parse_series("period,value\n2001-Q2,1\n2001-Q1,2\n", "x"); }), 3u);
    EXPECT_EQ(error_line([] { io::parse_series("period,value\n2001-Q2,1\n2001-05,2\n", "x"); }), 3u);
    EXPECT_EQ(error_line([] { io::parse_series("period,value\n2001-Q2,abc\n", "x"); }), 2u);
}

TEST(Panel, RoundTripAndErrors) {
    const auto p = io::parse_panel("period,a,b\n2000-Q4,1.5,2\n2001-Q1,-3,4e-3\n");
    EXPECT_EQ(p.variables, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(p.data, (MatrixXd{{1.5, 2.0}, {-3.0, 4e-3}}));
    const auto back = io::parse_panel(io::panel_csv(p, {{{"k", "v"}}}));
    EXPECT_EQ(back.data, p.data);
    EXPECT_EQ(back.periods, p.periods);
    EXPECT_EQ(error_line([] { io::parse_panel("period,a\n2000-Q1,1\n2000-Q3,2\n"); }), 3u);
    EXPECT_EQ(error_line([] { io::parse_panel("period,a\n2000-Q1,\n"); }), 2u);
}

TEST(Game, JsonRoundTrip) {
    GroupGame g;
    g.group_names = {"media", "central_bank"};
    g.b = VectorXd{{1.0, -2.5}};
    g.c = VectorXd{{2.0, 0.5}};
    g.lambda = MatrixXd{{0.1, 0.3}, {-0.2, 0.0}};
    const auto back = io::game_from_json(nlohmann::json::parse(io::game_to_json(g).dump()));
    EXPECT_EQ(back.group_names, g.group_names);
    EXPECT_EQ(back.b, g.b);
    EXPECT_EQ(back.c, g.c);
    EXPECT_EQ(back.lambda, g.lambda);

    auto bad = io::game_to_json(g);
    bad["c"] = {1.0, 0.0};
    EXPECT_THROW(io::game_from_json(bad), InvalidGame);
    bad = io::game_to_json(g);
    bad["lambda"] = {{0.0}, {0.0, 0.0}};
    EXPECT_THROW(io::game_from_json(bad), InvalidGame);
}

TEST(Fit, JsonRoundTrip) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    Panel p;
    p.variables = {"a", "b"};
    p.granularity = Granularity::quarterly;
    p.data.resize(40, 2);
    Period per = Period::parse("2000-Q1");
    for (int t = 0; t < 40; ++t) {
        p.periods.push_back(per);
        per = per.next();
        p.data(t, 0) = nd(rng) + (t ? 0.5 * p.data(t - 1, 0) : 0.0);
        p.data(t, 1) = nd(rng);
    }
    const auto fit = estimate_ols(p, 2);
    const auto back = io::fit_from_json(nlohmann::json::parse(io::fit_to_json(fit).dump()));
    EXPECT_EQ(back.variables, fit.variables);
    EXPECT_EQ(back.spec.p, 2);
    EXPECT_EQ(back.coef.constant, fit.coef.constant);
    for (std::size_t l = 0; l < 2; ++l) {
        EXPECT_EQ(back.coef.lag[l], fit.coef.lag[l]);
        EXPECT_EQ(back.se.lag[l], fit.se.lag[l]);
    }
    EXPECT_EQ(back.sigma, fit.sigma);
    EXPECT_EQ(back.dof, fit.dof);
}

TEST(Numbers, ShortestRoundTrip) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        EXPECT_EQ(io::parse_double(io::format_double(v), 1), v);
    }
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(100.0), "100");
}
