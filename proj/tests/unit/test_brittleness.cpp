// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "rulebench/metrics/brittleness.hpp"
#include "rulebench/metrics/detection.hpp"
#include "rulebench/rule_lang/rule_file.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace rulebench::metrics;
using rulebench::testing::must_parse;
using nlohmann::json;

std::vector<std::string> tags_of(const std::string& rule)
{
    std::vector<std::string> out;
    for (const auto& f : find_patterns(must_parse(rule), {})) {
        out.push_back(f.tag);
    }
    return out;
}

TEST(Brittleness, LogisticBasics)
{
    EXPECT_NEAR(brittleness_score(3, 3, 2, 1), 50.0, 1e-12);
    EXPECT_NEAR(brittleness_score(0, 0, 2, 1), 50.0, 1e-12);
    EXPECT_NEAR(brittleness_score(2, 1, 2, 1), 100.0 / (1.0 + std::exp(2.0)), 1e-12);
    EXPECT_LT(brittleness_score(4, 1, 2, 1), brittleness_score(2, 1, 2, 1));
    // No brittle findings: the ratio saturates at the cap.
    EXPECT_NEAR(brittleness_score(1, 0, 2, 1), 100.0 / (1.0 + std::exp(18.0)), 1e-15);
    EXPECT_NEAR(brittleness_score(0, 2, 2, 1), 100.0 / (1.0 + std::exp(-2.0)), 1e-12);
}

TEST(Brittleness, IocShapes)
{
    EXPECT_EQ(ioc_shape("https://evil.test/x"), tags::ioc_url);
    EXPECT_EQ(ioc_shape("a@b.com"), tags::ioc_email);
    EXPECT_EQ(ioc_shape("10.0.0.1"), tags::ioc_ip);
    EXPECT_EQ(ioc_shape("10.0.0.0/8"), tags::ioc_ip);
    EXPECT_EQ(ioc_shape("2001:db8::1"), tags::ioc_ip);
    EXPECT_EQ(ioc_shape("d41d8cd98f00b204e9800998ecf8427e"), tags::ioc_hash);
    EXPECT_EQ(ioc_shape("evil-domain.com"), tags::ioc_domain);
    EXPECT_EQ(ioc_shape("invoice.pdf"), std::nullopt);
    EXPECT_EQ(ioc_shape("svg"), std::nullopt);
}

TEST(Brittleness, FindingsPerConstruct)
{
    EXPECT_EQ(tags_of("sender.domain == 'evil.com'"), std::vector<std::string>{"ioc-domain"});
    EXPECT_EQ(tags_of("sender.domain in ('a.com', 'b.com', 'svg')"), (std::vector<std::string>{"ioc-domain", "ioc-domain"}));
    EXPECT_EQ(tags_of("subject == 'Your account has been locked'"), std::vector<std::string>{"exact-long-literal"});
    EXPECT_TRUE(tags_of("subject != 'Your account has been locked'").empty());
    EXPECT_EQ(tags_of("strings.ilike(subject, '*a*', 'b')"), std::vector<std::string>{"fuzzy-glob"});
    EXPECT_EQ(tags_of("regex.icontains(subject, 'a.*b', 'plain')"), std::vector<std::string>{"fuzzy-regex"});
    EXPECT_EQ(tags_of("not headers.auth_summary.dmarc.pass"), std::vector<std::string>{"auth-summary"});
    EXPECT_EQ(tags_of("any(nlu.intents, . == 'bec')"), std::vector<std::string>{"nlu"});
    EXPECT_EQ(tags_of("profile.by_sender().prevalence == 'new' and profile.by_sender().solicited"),
              (std::vector<std::string>{"sender-prevalence", "sender-solicited"}));
    EXPECT_EQ(tags_of("any(attachments, any(beta.scan_base64(.text_content), . == 'x'))"),
              std::vector<std::string>{"base64-scan"});
}

TEST(Brittleness, LocationsPointAtSource)
{
    const auto findings = find_patterns(must_parse("type.inbound\nand sender.domain == 'evil.com'"), {});
    ASSERT_EQ(findings.size(), 1U);
    EXPECT_EQ(findings[0].ast_location.rfind("2:", 0), 0U) << findings[0].ast_location;
}

TEST(Brittleness, GeneratedFixtureHandCount)
{
    const auto rule = rulebench::lang::load_rule_file(rulebench::testing::fixture("samples/generated_svg_eml.mql"));
    const auto report = analyze_brittleness(must_parse(rule.text));
    // base64 scan 1, globs 5, regex 1, prevalence 1, solicited 1, dmarc 1
    EXPECT_DOUBLE_EQ(report.rewards_R, 10.0);
    EXPECT_DOUBLE_EQ(report.penalties_P, 0.0);
    EXPECT_NEAR(report.B, 100.0 / (1.0 + std::exp(18.0)), 1e-15);
    EXPECT_NEAR(report.robustness + report.B / 100.0, 1.0, 1e-12);
}

TEST(Brittleness, TaxonomyWeightsAndParameters)
{
    const auto t = taxonomy_from_json(json{{"weights", {{"ioc-domain", 3.0}}}, {"k", 1.0}, {"x0", 2.0}});
    const auto r = analyze_brittleness(must_parse("sender.domain == 'evil.com' and not headers.auth_summary.spf.pass"), t);
    EXPECT_DOUBLE_EQ(r.penalties_P, 3.0);
    EXPECT_DOUBLE_EQ(r.rewards_R, 1.0);
    EXPECT_NEAR(r.B, 100.0 / (1.0 + std::exp(1.0 * (1.0 / 3.0 - 2.0))), 1e-12);
    EXPECT_DOUBLE_EQ(t.min_brittle_weight(), 1.0);
}

TEST(Brittleness, TaxonomyIsStrict)
{
    EXPECT_THROW(taxonomy_from_json(json{{"weights", {{"nope", 1.0}}}}), MetricsError);
    EXPECT_THROW(taxonomy_from_json(json{{"k", 0.0}}), MetricsError);
    EXPECT_THROW(taxonomy_from_json(json{{"weights", {{"nlu", -1.0}}}}), MetricsError);
    EXPECT_THROW(taxonomy_from_json(json{{"extra", 1}}), MetricsError);
    EXPECT_NO_THROW(load_taxonomy(rulebench::testing::fixture("holdout/taxonomy.json")));
}

TEST(Brittleness, ReportJsonRoundTrip)
{
    const auto r = analyze_brittleness(must_parse("sender.domain == 'evil.com' or strings.ilike(subject, '*x*')"));
    const auto back = brittleness_report_from_json(to_json(r));
    EXPECT_EQ(to_json(back), to_json(r));
}

}  // namespace
