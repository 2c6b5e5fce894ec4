// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"
#include "reference.hpp"

#include "rulebench/corpus/corpus_io.hpp"
#include "rulebench/eval/evaluator.hpp"
#include "rulebench/eval/glob.hpp"

#include <gtest/gtest.h>

namespace {

using namespace rulebench;
using rulebench::testing::basic_message;
using rulebench::testing::must_parse;

struct Outcome {
    bool hit;
    eval::EvalStats stats;
};

Outcome run(const std::string& rule, const corpus::Message& m)
{
    eval::EvalStats stats;
    const bool hit = eval::CompiledRule(must_parse(rule)).matches(m, &stats);
    // Every case here doubles as an oracle check.
    EXPECT_EQ(hit, rulebench::testing::reference_eval(must_parse(rule), corpus::to_json(m))) << rule;
    return {hit, stats};
}

corpus::Message smuggling_message()
{
    auto m = basic_message("s1");
    corpus::Attachment svg{"r.svg", "svg", "image/svg+xml", "<svg onload=x><script>atob('x')</script>", {}, {}};
    corpus::Attachment eml{"R.eml", "eml", "message/rfc822", "To: bob@acme.com\nAttachment: r.svg", {svg},
                           {"window.location.href='x'"}};
    m.attachments.push_back(eml);
    return m;
}

TEST(Evaluator, TypeAndSimpleFields)
{
    const auto m = basic_message("a");
    EXPECT_TRUE(run("type.inbound", m).hit);
    EXPECT_FALSE(run("type.outbound", m).hit);
    EXPECT_TRUE(run("sender.domain == 'vendor.com'", m).hit);
    EXPECT_TRUE(run("sender.domain =~ 'VENDOR.com'", m).hit);
    EXPECT_FALSE(run("sender.domain == 'VENDOR.com'", m).hit);
    EXPECT_TRUE(run("sender.domain in~ ('x', 'Vendor.Com')", m).hit);
    EXPECT_FALSE(run("sender.domain in ('x', 'Vendor.Com')", m).hit);
    EXPECT_TRUE(run("headers.auth_summary.dmarc.pass and profile.by_sender().solicited", m).hit);
    EXPECT_TRUE(run("profile.by_sender().prevalence == 'common'", m).hit);
}

TEST(Evaluator, NullIsFalseAndNotIsComplement)
{
    auto m = basic_message("a");
    // No nlu section: the path is null, the comparison null, the rule false.
    EXPECT_FALSE(run("any(nlu.intents, . == 'bec')", m).hit);
    EXPECT_TRUE(run("not any(nlu.intents, . == 'bec')", m).hit);
    EXPECT_FALSE(run("all(nlu.intents, . == 'bec')", m).hit);
    EXPECT_FALSE(run("headers.raw.reply_to == 'x'", m).hit);
    EXPECT_TRUE(run("not (headers.raw.reply_to == 'x')", m).hit);
    EXPECT_FALSE(run("headers.raw.reply_to != 'x'", m).hit);
}

TEST(Evaluator, AllOverEmptyIsTrue)
{
    const auto m = basic_message("a");
    EXPECT_TRUE(run("all(attachments, .file_extension == 'pdf')", m).hit);
    EXPECT_FALSE(run("any(attachments, .file_extension == 'pdf')", m).hit);
}

TEST(Evaluator, TypeMismatchesAreCounted)
{
    const auto m = basic_message("a");
    const auto o = run("sender.domain == 3", m);
    EXPECT_FALSE(o.hit);
    EXPECT_EQ(o.stats.type_mismatches, 1U);
    EXPECT_EQ(run("subject > 2", m).stats.type_mismatches, 1U);
    EXPECT_EQ(run("any(subject, . == 'x')", m).stats.type_mismatches, 1U);
    EXPECT_EQ(run("profile.solicited", m).stats.type_mismatches, 1U);
    EXPECT_EQ(run("sender.nickname == 'x'", m).stats.type_mismatches, 1U);
}

TEST(Evaluator, RawHeadersCaseAndUnderscore)
{
    auto m = basic_message("a");
    m.headers.raw["Reply-To"] = "z@evil.test";
    EXPECT_TRUE(run("headers.raw.reply_to == 'z@evil.test'", m).hit);
    EXPECT_TRUE(run("length(headers.raw.REPLY_TO) == 11", m).hit);
}

TEST(Evaluator, PatternFunctionsAreVariadic)
{
    auto m = basic_message("a");
    m.subject = "New voicemail from +1 (800) 555";
    EXPECT_TRUE(run("strings.ilike(subject, '*fax*', '*VOICEMAIL*')", m).hit);
    EXPECT_FALSE(run("strings.ilike(subject, 'voicemail*')", m).hit);
    EXPECT_TRUE(run("strings.ilike(subject, 'new?voicemail*')", m).hit);
    EXPECT_TRUE(run("strings.icontains(subject, 'x', 'FROM')", m).hit);
    EXPECT_FALSE(run("strings.contains(subject, 'FROM')", m).hit);
    EXPECT_TRUE(run("regex.icontains(subject, 'VOICE ?MAIL')", m).hit);
    EXPECT_FALSE(run("regex.contains(subject, 'VOICE ?MAIL')", m).hit);
    EXPECT_TRUE(run("regex.contains(subject, '\\(8\\d\\d\\)')", m).hit);
}

TEST(Evaluator, InvalidLiteralRegexNeverMatches)
{
    const auto m = basic_message("a");
    const auto o = run("regex.icontains(subject, '(unclosed', 'hel')", m);
    EXPECT_TRUE(o.hit);
    EXPECT_EQ(o.stats.invalid_patterns, 1U);
    EXPECT_FALSE(run("regex.icontains(subject, '(unclosed')", m).hit);
}

TEST(Evaluator, DynamicPatternsFromFields)
{
    auto m = basic_message("a");
    m.subject = "for bob@acme.com";
    EXPECT_TRUE(run("any(recipients.to, strings.icontains(subject, .email.email))", m).hit);
    EXPECT_TRUE(run("any(recipients.to, regex.icontains(subject, .email.domain.domain))", m).hit);
}

TEST(Evaluator, NestedAttachmentsAndBase64)
{
    const auto m = smuggling_message();
    EXPECT_TRUE(run("any(attachments, any(file.parse_eml(.).attachments, .file_extension in~ ('svg', 'svgz')))", m).hit);
    EXPECT_TRUE(run("any(attachments, any(beta.scan_base64(file.parse_text(.).text), strings.ilike(., '*window.location*')))", m).hit);
    EXPECT_TRUE(run("any(attachments, any(beta.scan_base64(.text_content), strings.ilike(., '*window*')))", m).hit);
    // A string with no owning attachment has nothing to scan.
    EXPECT_FALSE(run("any(beta.scan_base64(subject), true)", m).hit);
    EXPECT_TRUE(run("any(attachments, any(recipients.to, strings.icontains(file.parse_text(..).text, .email.email) and .email.domain.valid))", m).hit);
    EXPECT_TRUE(run("any(attachments, length(.inner_attachments) == 1 and length(.base64_blobs) >= 1)", m).hit);
}

TEST(Evaluator, PublishedRulesOnCraftedMessage)
{
    const auto m = smuggling_message();
    for (const char* file : {"samples/generated_svg_eml.mql", "rules/eml_svg_javascript.mql"}) {
        auto text = rulebench::testing::read_file(rulebench::testing::fixture(file));
        auto with_sender = m;
        with_sender.sender_profile.prevalence = corpus::Prevalence::New;
        EXPECT_TRUE(run(text, with_sender).hit) << file;
        EXPECT_FALSE(run(text, basic_message("clean")).hit) << file;
    }
}

TEST(Glob, MatchesReferenceOnEdgeCases)
{
    const std::vector<std::pair<std::string, std::string>> cases{
        {"", ""},         {"", "*"},       {"a", ""},           {"abc", "a*c"},    {"abc", "a*b*c*"},
        {"aXbXc", "*b*"}, {"abc", "?b?"},  {"ab", "???"},       {"AbC", "aBc"},    {"mississippi", "*sip*"},
        {"aaa", "a*a*a*a"}, {"x*y", "x*y"}, {"<script>", "*<SCRIPT*"}, {"abcd", "*c"}, {"abcd", "*d"},
    };
    for (const auto& [text, pattern] : cases) {
        EXPECT_EQ(eval::glob_match(text, pattern), rulebench::testing::reference_glob(text, pattern)) << text << " ~ " << pattern;
    }
}

}  // namespace
