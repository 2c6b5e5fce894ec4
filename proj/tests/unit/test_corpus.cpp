// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "rulebench/corpus/corpus_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

using namespace rulebench::corpus;
using rulebench::testing::basic_message;
using rulebench::testing::fixture;
using rulebench::testing::scratch_dir;

TEST(Corpus, SmallFixtureCounts)
{
    const Corpus c = ingest(fixture("corpus/small.jsonl"));
    EXPECT_EQ(c.size(), 4U);
    EXPECT_EQ(c.manifest().malicious, 2U);
    EXPECT_EQ(c.manifest().benign, 1U);
    EXPECT_EQ(c.manifest().unlabeled, 1U);
    EXPECT_EQ(c.label_of("m-001"), LabelState::Malicious);
    EXPECT_EQ(c.label_of("m-003"), LabelState::Benign);
    EXPECT_EQ(c.label_of("m-004"), LabelState::Unlabeled);
    EXPECT_THROW((void)c.label_of("nope"), CorpusError);
    EXPECT_EQ(c.message("m-002").headers.raw.at("reply_to"), "ceo.exec01@proton.me");
}

TEST(Corpus, UnknownKindNamesRecord)
{
    try {
        (void)ingest(fixture("corpus/bad_kind.jsonl"));
        FAIL() << "expected CorpusError";
    } catch (const CorpusError& e) {
        EXPECT_NE(std::string(e.what()).find("record 2"), std::string::npos) << e.what();
    }
}

TEST(Corpus, MissingFieldNamesPath)
{
    std::istringstream in(R"({"kind":"message","id":"x","timestamp":"2025-03-01T00:00:00Z"})");
    try {
        (void)ingest_stream(in, "t");
        FAIL() << "expected CorpusError";
    } catch (const CorpusError& e) {
        EXPECT_NE(std::string(e.what()).find("record 1"), std::string::npos) << e.what();
    }
}

TEST(Corpus, RejectsDuplicatesAndDanglingLabels)
{
    std::vector<Message> two{basic_message("a"), basic_message("a")};
    EXPECT_THROW(Corpus("t", "", two, {}), CorpusError);
    const std::vector<Label> dangling{{"ghost", Verdict::Benign, "x"}};
    EXPECT_THROW(Corpus("t", "", {basic_message("a")}, dangling), CorpusError);
    const std::vector<Label> twice{{"a", Verdict::Benign, "x"}, {"a", Verdict::Malicious, "y"}};
    EXPECT_THROW(Corpus("t", "", {basic_message("a")}, twice), CorpusError);
}

TEST(Corpus, MessageJsonRoundTrip)
{
    Message m = basic_message("r1");
    Attachment inner{"x.svg", "svg", "image/svg+xml", "<svg/>", {}, {}};
    Attachment eml{"a.eml", "eml", "message/rfc822", "From: x", {inner}, {"blob"}};
    m.attachments.push_back(eml);
    m.links.push_back({"https://x.test/a", "x.test"});
    m.headers.raw["Reply-To"] = "z@y.test";
    m.nlu = Nlu{{"bec"}, {"Acme"}};
    EXPECT_EQ(message_from_json(to_json(m)), m);
}

TEST(Corpus, ExportIngestRoundTripWithManifest)
{
    const Corpus c = ingest(fixture("corpus/small.jsonl"));
    const auto dir = scratch_dir("corpus-rt");
    write_corpus(c, dir / "c.jsonl");
    EXPECT_TRUE(std::filesystem::exists(manifest_path_for(dir / "c.jsonl")));
    const Corpus back = ingest(dir / "c.jsonl");
    EXPECT_TRUE(back.same_content(c));
    EXPECT_EQ(back.manifest(), c.manifest());
}

TEST(Corpus, ManifestMismatchIsRejected)
{
    const Corpus c = ingest(fixture("corpus/small.jsonl"));
    const auto dir = scratch_dir("corpus-manifest");
    write_corpus(c, dir / "c.jsonl");
    auto manifest = to_json(c.manifest());
    manifest["malicious"] = 3;
    rulebench::testing::write_file(manifest_path_for(dir / "c.jsonl"), manifest.dump());
    EXPECT_THROW((void)ingest(dir / "c.jsonl"), CorpusError);
}

TEST(Corpus, TimestampValidation)
{
    EXPECT_TRUE(is_utc_timestamp("2025-03-01T08:15:00Z"));
    EXPECT_FALSE(is_utc_timestamp("2025-13-01T08:15:00Z"));
    EXPECT_FALSE(is_utc_timestamp("2025-03-01 08:15:00"));
}

TEST(Corpus, SameContentIgnoresOrder)
{
    const Corpus a("a", "", {basic_message("1"), basic_message("2")}, {});
    const Corpus b("b", "", {basic_message("2"), basic_message("1")}, {});
    EXPECT_TRUE(a.same_content(b));
}

}  // namespace
