// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "rulebench/holdout/harness.hpp"
#include "rulebench/report/render.hpp"

#include <gtest/gtest.h>

namespace {

using namespace rulebench;
using namespace rulebench::report;
using nlohmann::json;

const std::vector<DetectionRow> rows{{"Callback phishing", 16, 14, 2, 12, 0},
                                     {"Quiet rule", 0, 0, 0, 0, 3},
                                     {"Has, comma | pipe", 1, 1, 0, 1, 0}};

TEST(Render, ParseFormat)
{
    EXPECT_EQ(parse_format("markdown"), Format::markdown);
    EXPECT_EQ(parse_format("csv"), Format::csv);
    EXPECT_EQ(parse_format("structured"), Format::structured);
    EXPECT_EQ(parse_format("html"), std::nullopt);
}

TEST(Render, MarkdownDetectionTable)
{
    const auto text = render_detection_table(rows, Format::markdown);
    EXPECT_EQ(text.rfind("| Name | Hits | TPs | FPs | Unique TPs | Score | Unlabeled |\n", 0), 0U);
    EXPECT_NE(text.find("| Callback phishing | 16 | 14 | 2 | 12 | 0.813 | 0 |"), std::string::npos);
    EXPECT_NE(text.find("| Quiet rule | 0 | 0 | 0 | 0 | n/a | 3 |"), std::string::npos);
    EXPECT_NE(text.find("Has, comma \\| pipe"), std::string::npos);
}

TEST(Render, CsvDetectionTable)
{
    const auto text = render_detection_table(rows, Format::csv);
    EXPECT_EQ(text.rfind("Name,Hits,TPs,FPs,Unique TPs,Score,Unlabeled\n", 0), 0U);
    EXPECT_NE(text.find("Callback phishing,16,14,2,12,0.813,0\n"), std::string::npos);
    EXPECT_NE(text.find("\"Has, comma | pipe\",1,1,0,1,1.000,0\n"), std::string::npos);
}

TEST(Render, StructuredDetectionTable)
{
    const auto j = json::parse(render_detection_table(rows, Format::structured));
    ASSERT_EQ(j.size(), 3U);
    EXPECT_EQ(j[0].at("score"), "0.813");
    EXPECT_EQ(j[0].at("unique_tp"), 12);
    EXPECT_EQ(j[1].at("score"), "n/a");
}

TEST(Render, ComparisonCells)
{
    const std::vector<ComparisonRow> cmp{{"A", 12.34, 0.0, 3.114, 2}, {"B", std::nullopt, 50.0, 7.5, std::nullopt}};
    const auto text = render_comparison_table(cmp, Format::markdown);
    EXPECT_NE(text.find("| A | 12.3 | 0.0 | 3.11 | 2 |"), std::string::npos);
    EXPECT_NE(text.find("| B | n/a | 50.0 | 7.50 | n/a |"), std::string::npos);
    const auto j = comparison_table_json(cmp);
    EXPECT_EQ(j[1].at("brittleness_generated"), "n/a");
    EXPECT_TRUE(j[1].at("k_pass").is_null());
}

TEST(Render, DetectionRowFromHunt)
{
    eval::HuntResult h;
    h.rule_name = "r";
    h.hits = 5;
    h.tp = 4;
    h.fp = 1;
    h.unique_tp = 2;
    h.unlabeled = 0;
    const auto r = detection_row(h);
    EXPECT_EQ(r.name, "r");
    EXPECT_EQ(r.tp, 4U);
    EXPECT_EQ(r.unique_tp, 2U);
}

TEST(Render, ReportSchemaVersion)
{
    EXPECT_THROW(render_report(json::object(), Format::markdown), ReportError);
    EXPECT_THROW(render_report(json{{"schema_version", holdout::report_schema_version + 1}, {"rows", json::array()}},
                               Format::markdown),
                 ReportError);
    EXPECT_THROW(render_report(json{{"schema_version", holdout::report_schema_version}, {"rows", {{{"x", 1}}}}},
                               Format::markdown),
                 ReportError);
}

TEST(Render, FixtureReport)
{
    const auto report = holdout::run_holdout(rulebench::testing::fixture_holdout_config());
    const json j = holdout::to_json(report);
    const auto md = render_report(j, Format::markdown);
    EXPECT_NE(md.find("### Human rules"), std::string::npos);
    EXPECT_NE(md.find("### Brittleness and cost"), std::string::npos);
    EXPECT_NE(md.find("| Callback phishing via PDF invoice |"), std::string::npos);
    const auto structured = json::parse(render_report(j, Format::structured));
    EXPECT_EQ(structured.at("human_rules").size(), 3U);
    EXPECT_EQ(structured.at("generated_rules").size(), 3U);
    EXPECT_EQ(structured.at("comparison").at(0).at("cost_dollars"), "3.11");
    EXPECT_EQ(structured.at("comparison").at(0).at("k_pass"), 2);
}

}  // namespace
