#include <gtest/gtest.h>

#include "climattn/csv.hpp"
#include "climattn/period.hpp"

using namespace climattn;

TEST(Period, ContainingAlignsToGranularity) {
    const Date d = parse_date("1997-05-20");
    EXPECT_EQ(Period::containing(Granularity::monthly, d).label(), "1997-05");
    EXPECT_EQ(Period::containing(Granularity::quarterly, d).label(), "1997-Q2");
    EXPECT_EQ(Period::containing(Granularity::yearly, d).label(), "1997");
    EXPECT_EQ(format_date(Period::containing(Granularity::quarterly, d).start()), "1997-04-01");
}

TEST(Period, ParseRoundTrip) {
    for (const char* s : {"1999-12", "2000-01", "1997-Q1", "2021-Q4", "2007"}) EXPECT_EQ(Period::parse(s).label(), s);
    EXPECT_THROW(Period::parse("1999-13"), ParseError);
    EXPECT_THROW(Period::parse("1999-Q5"), ParseError);
    EXPECT_THROW(Period::parse("99"), ParseError);
}

TEST(Period, NextCrossesYearBoundary) {
    EXPECT_EQ(Period::parse("1999-12").next().label(), "2000-01");
    EXPECT_EQ(Period::parse("1999-Q4").next().label(), "2000-Q1");
    EXPECT_EQ(Period::parse("2000-Q1").prev().label(), "1999-Q4");
}

TEST(Period, Convert) {
    EXPECT_EQ(Period::parse("2021-12").convert(Granularity::quarterly).label(), "2021-Q4");
    EXPECT_EQ(Period::parse("2021-Q3").convert(Granularity::monthly).label(), "2021-07");
    const Window w{Period::parse("1995-01"), Period::parse("2021-12")};
    EXPECT_EQ(w.convert(Granularity::quarterly).label(), "1995-Q1..2021-Q4");
}

TEST(Date, RejectsInvalidCalendarDates) {
    EXPECT_NO_THROW(parse_date("2000-02-29"));
    EXPECT_THROW(parse_date("1999-02-29"), ParseError);
    EXPECT_THROW(parse_date("1999-2-1"), ParseError);
    EXPECT_THROW(parse_date("1999-00-10"), ParseError);
}

TEST(Csv, QuotedFieldsAndLineNumbers) {
    const auto recs = csv::parse("a,b\n\"x, y\",\"he said \"\"hi\"\"\"\n\"multi\nline\",z\r\nlast,row");
    ASSERT_EQ(recs.size(), 4u);
    EXPECT_EQ(recs[1].fields[0], "x, y");
    EXPECT_EQ(recs[1].fields[1], "he said \"hi\"");
    EXPECT_EQ(recs[2].fields[0], "multi\nline");
    EXPECT_EQ(recs[2].fields[1], "z");
    EXPECT_EQ(recs[2].line, 3u);
    EXPECT_EQ(recs[3].line, 5u);
    EXPECT_EQ(recs[3].fields[1], "row");
}

TEST(Csv, SkipsLeadingMetadataAndEmptyFields) {
    const auto recs = csv::parse("# tool: x\n# window: full\nperiod,value\n2000-01,\n");
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].line, 3u);
    EXPECT_EQ(recs[1].fields.size(), 2u);
    EXPECT_EQ(recs[1].fields[1], "");
}

TEST(Csv, Errors) {
    try {
        csv::parse("a,b\nc,\"open\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(csv::parse("a,b\"c\n"), ParseError);
    EXPECT_THROW(csv::parse("\"a\"b,c\n"), ParseError);
}

TEST(Csv, EscapeRoundTrip) {
    const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "line\nbreak", ""};
    const auto recs = csv::parse(csv::join(fields));
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].fields, fields);
}
