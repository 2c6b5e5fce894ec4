// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// and exits nonzero if any fails. Tolerances and time limits are fixed here.

#include "fixtures.hpp"
#include "random_rule.hpp"
#include "reference.hpp"

#include "rulebench/corpus/corpus_io.hpp"
#include "rulebench/corpus/synth.hpp"
#include "rulebench/eval/hunt.hpp"
#include "rulebench/holdout/harness.hpp"
#include "rulebench/holdout/subprocess.hpp"
#include "rulebench/metrics/brittleness.hpp"
#include "rulebench/metrics/cost.hpp"
#include "rulebench/metrics/detection.hpp"
#include "rulebench/report/render.hpp"
#include "rulebench/rule_lang/parser.hpp"
#include "rulebench/rule_lang/rule_file.hpp"
#include "rulebench/rule_lang/unparse.hpp"
#include "rulebench/rule_lang/validator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rulebench;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Check {
    std::string failure;  // empty when every condition held
    std::string note;     // printed after the verdict

    void expect(bool condition, const std::string& what)
    {
        if (!condition && failure.empty()) {
            failure = what;
        }
    }
};

int failures = 0;

void run(const char* id, const char* title, double limit_seconds, const std::function<void(Check&)>& body)
{
    Check check;
    const auto start = Clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    check.expect(seconds < limit_seconds, "took " + std::to_string(seconds) + " s");
    const bool ok = check.failure.empty();
    failures += ok ? 0 : 1;
    std::printf("%s %s: %s (%.3f s, limit %.0f s)%s%s%s%s\n", ok ? "PASS" : "FAIL", id, title, seconds,
                limit_seconds, ok ? "" : " -- ", check.failure.c_str(), check.note.empty() ? "" : "; ",
                check.note.c_str());
    std::fflush(stdout);
}

struct Row {
    std::uint64_t tp, fp, unique_tp;
    double listed;
};

// Human rules, then generated rules.
const std::vector<Row> reference_rows{
    {756, 9, 747, 0.982}, {276, 0, 274, 0.996}, {14, 2, 12, 0.813},  {1557, 1, 793, 0.754}, {33, 2, 31, 0.914},
    {304, 40, 264, 0.826}, {57, 0, 24, 0.711},  {99, 1, 57, 0.780},  {231, 9, 208, 0.913},  {10, 0, 10, 1.000},
    {8, 2, 8, 0.800},      {31, 0, 23, 0.871},  {239, 0, 238, 0.998}, {4, 0, 1, 0.625},     {35, 0, 4, 0.557},
    {116, 16, 75, 0.723},  {6, 0, 5, 0.917},    {56, 0, 24, 0.714},  {38, 0, 18, 0.737},   {202, 0, 187, 0.963},
    {7, 0, 7, 1.000},      {6, 0, 6, 1.000},
};

// The listed score for this row is not the one its own counts give:
// (231 + 208) / (2 * 240) = 0.9146. No other row disagrees.
const Row inconsistent_row{231, 9, 208, 0.913};

void detection_rows(Check& c)
{
    constexpr double tolerance = 0.0005;
    c.expect(reference_rows.size() == 22, "expected 22 rows");
    std::size_t matched = 0;
    for (const auto& r : reference_rows) {
        const auto s = metrics::detection_score(r.tp, r.fp, r.unique_tp);
        const double rounded = std::round(s.score * 1000.0) / 1000.0;
        const std::string label = std::to_string(r.tp) + "/" + std::to_string(r.fp) + "/" + std::to_string(r.unique_tp);
        const double oracle = 0.5 * (double(r.tp) / double(r.tp + r.fp) + double(r.unique_tp) / double(r.tp + r.fp));
        c.expect(std::fabs(s.score - oracle) < 1e-12, "oracle mismatch " + label);
        const bool agrees = std::fabs(rounded - r.listed) <= tolerance &&
                            std::fabs(std::stod(metrics::format_score(s)) - r.listed) <= tolerance;
        const bool known = r.tp == inconsistent_row.tp && r.fp == inconsistent_row.fp &&
                           r.unique_tp == inconsistent_row.unique_tp;
        if (known) {
            // Flag it if this ever starts agreeing: the formula would have changed.
            c.expect(!agrees && metrics::format_score(s) == "0.915", "row " + label + " now gives " + std::to_string(rounded));
            continue;
        }
        c.expect(agrees, "row " + label + " gives " + std::to_string(rounded));
        matched += agrees ? 1 : 0;
    }
    c.note = std::to_string(matched) + "/21 consistent rows match; row 231/9/208 is listed as 0.913 but its "
             "counts give 0.915";
}

metrics::AttemptLedger ledger_passing_at(const std::vector<double>& costs, std::size_t k_pass)
{
    metrics::AttemptLedger ledger;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        ledger.record(costs[i], i + 1 == k_pass);
    }
    return ledger;
}

void cost_identity(Check& c)
{
    for (const double cost : {0.25, 1.0, 1.51, 2.07}) {
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto ledger = ledger_passing_at(std::vector<double>(k, cost), k);
            c.expect(ledger.k_pass() == k, "k_pass");
            c.expect(std::fabs(metrics::total_cost(ledger) - cost * double(k)) < 1e-12,
                     "C * k for C=" + std::to_string(cost) + " k=" + std::to_string(k));
        }
    }
    const auto single = ledger_passing_at({1.51}, 1);
    c.expect(single.k_pass() == 1U, "single attempt k_pass");
    c.expect(std::fabs(metrics::total_cost(single) - 1.51) < 1e-12, "single attempt cost 1.51");
}

void cost_simulation(Check& c)
{
    constexpr std::size_t ledgers = 200;
    constexpr std::size_t max_k = 5;
    Rng rng(2024);
    std::vector<metrics::AttemptLedger> drawn;
    std::vector<metrics::AttemptLedger> constant;
    constexpr double constant_cost = 1.37;
    for (std::size_t n = 0; n < ledgers; ++n) {
        const auto k = static_cast<std::size_t>(rng.between(1, max_k));
        std::vector<double> costs(k);
        for (auto& x : costs) {
            x = 1.75 + 1.25 * (2.0 * rng.unit() - 1.0);  // around a mean of 1.75
        }
        drawn.push_back(ledger_passing_at(costs, k));
        constant.push_back(ledger_passing_at(std::vector<double>(k, constant_cost), k));
    }
    const auto curve = metrics::pass_at_k_curve(drawn);
    c.expect(curve.size() == max_k, "curve length");
    for (std::size_t i = 0; i < curve.size(); ++i) {
        c.expect(curve[i].mean_cost.has_value(), "no ledger passed at k=" + std::to_string(curve[i].k));
        if (i > 0 && curve[i].mean_cost && curve[i - 1].mean_cost) {
            c.expect(*curve[i].mean_cost > *curve[i - 1].mean_cost,
                     "mean cumulative cost not increasing at k=" + std::to_string(curve[i].k));
        }
    }
    c.expect(curve.back().pass_fraction == 1.0, "every ledger passes by the last k");
    for (const auto& point : metrics::pass_at_k_curve(constant)) {
        c.expect(point.mean_cost && std::fabs(*point.mean_cost - constant_cost * double(point.k)) < 1e-12,
                 "constant cost not linear at k=" + std::to_string(point.k));
    }
}

double logistic(double ratio, double k, double x0)
{
    return 100.0 / (1.0 + std::exp(k * (ratio - x0)));
}

void brittleness_properties(Check& c)
{
    for (const double k : {0.5, 2.0, 5.0}) {
        for (const double x0 : {0.5, 1.0, 3.0}) {
            c.expect(std::fabs(metrics::brittleness_score(x0, 1.0, k, x0) - 50.0) <= 1e-9, "B(x0) != 50");
        }
        double previous = 101.0;
        for (int i = 0; i < 100; ++i) {
            const double ratio = 0.05 + 0.1 * i;
            const double b = metrics::brittleness_score(ratio, 1.0, k, 1.0);
            c.expect(b < previous, "B not strictly decreasing at ratio " + std::to_string(ratio));
            c.expect(std::fabs(b - logistic(ratio, k, 1.0)) < 1e-9, "B differs from logistic");
            previous = b;
        }
    }

    const metrics::Taxonomy taxonomy;
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        const std::string base = rulebench::testing::random_rule(rng, 3);
        const auto before = metrics::analyze_brittleness(rulebench::testing::must_parse(base), taxonomy);
        c.expect(std::fabs(before.robustness + before.B / 100.0 - 1.0) <= 1e-12, "robustness + B/100 != 1");
        const auto brittle =
            metrics::analyze_brittleness(rulebench::testing::must_parse(base + " and sender.domain == 'evil-example.com'"), taxonomy);
        const auto robust =
            metrics::analyze_brittleness(rulebench::testing::must_parse(base + " and headers.auth_summary.dmarc.pass"), taxonomy);
        c.expect(brittle.penalties_P > before.penalties_P, "brittle edit added no penalty: " + base);
        c.expect(robust.rewards_R > before.rewards_R, "robust edit added no reward: " + base);
        c.expect(brittle.B >= before.B, "brittle finding lowered B: " + base);
        c.expect(robust.B <= before.B, "robust finding raised B: " + base);
    }

    // Hand count for the generated fixture: 5 globs, 1 regex, 1 base64
    // scan, prevalence, solicited and DMARC; nothing brittle.
    const auto fixture = lang::load_rule_file(rulebench::testing::fixture("samples/generated_svg_eml.mql"));
    const auto report = metrics::analyze_brittleness(rulebench::testing::must_parse(fixture.text), taxonomy);
    const double R = 10.0;
    const double P = 0.0;
    c.expect(report.rewards_R == R && report.penalties_P == P,
             "fixture counts R=" + std::to_string(report.rewards_R) + " P=" + std::to_string(report.penalties_P));
    const double ratio = std::max(taxonomy.ratio_cap, R / taxonomy.min_brittle_weight());
    c.expect(std::fabs(report.B - logistic(ratio, taxonomy.k, taxonomy.x0)) <= 1e-12, "fixture B");
}

std::string dump_hunt(const eval::HitSet& hits, const corpus::Corpus& corpus)
{
    return eval::to_json(eval::classify(hits, corpus, {})).dump();
}

void hunt_equivalence(Check& c)
{
    Rng rng(31337);
    int selective = 0;  // rules that hit some but not all messages
    for (int i = 0; i < 50; ++i) {
        corpus::SynthConfig config;
        config.count = 200;
        config.unlabeled_fraction = 0.05;
        const auto corpus = corpus::synthesize(config, 100 + static_cast<std::uint64_t>(i));
        const std::string text = rulebench::testing::random_rule(rng, 3);
        const auto ast = rulebench::testing::must_parse(text);
        const eval::CompiledRule rule(ast);
        const auto one = eval::hunt(rule, corpus, "r", {1});
        const auto eight = eval::hunt(rule, corpus, "r", {8});
        std::vector<std::string> expected;
        for (const auto& m : corpus.messages()) {
            if (rulebench::testing::reference_eval(ast, corpus::to_json(m))) {
                expected.push_back(m.id);
            }
        }
        std::sort(expected.begin(), expected.end());
        c.expect(one.hit_ids == expected, "reference disagrees on rule " + text);
        selective += !expected.empty() && expected.size() < corpus.size() ? 1 : 0;
        c.expect(dump_hunt(one, corpus) == dump_hunt(eight, corpus), "8 workers differ from 1 on rule " + text);
    }
    c.expect(selective >= 10, "only " + std::to_string(selective) + " selective rules");
    c.note = std::to_string(selective) + "/50 rules selective";
}

void holdout_runs(Check& c)
{
    const auto config = rulebench::testing::fixture_holdout_config();
    const auto first = holdout::run_holdout(config);
    const auto second = holdout::run_holdout(config);
    c.expect(first.rows.size() == 3, "expected 3 rows");
    c.expect(first.corpus_manifest.total == 1000, "expected a 1000-message corpus");
    const json document = holdout::to_json(first);
    const json tables = json::parse(report::render_report(document, report::Format::structured));
    for (const char* table : {"human_rules", "generated_rules"}) {
        for (const auto& cell : tables.at(table)) {
            const auto recomputed =
                metrics::format_score(cell.at("tp").get<std::uint64_t>(), cell.at("fp").get<std::uint64_t>(),
                                      cell.at("unique_tp").get<std::uint64_t>());
            c.expect(cell.at("score") == recomputed, std::string(table) + " score cell for " + cell.at("name").dump());
        }
    }
    for (const auto& row : first.rows) {
        std::vector<const holdout::RuleEvaluation*> evaluations{&row.human};
        if (row.generated) {
            evaluations.push_back(&*row.generated);
        }
        for (const auto* e : evaluations) {
            const auto& h = e->hunt;
            const auto recomputed = metrics::detection_score(h.tp, h.fp, h.unique_tp);
            c.expect(recomputed.score == e->score.score, "stored score for " + h.rule_name);
            c.expect(h.tp == h.tp_ids.size() && h.fp == h.fp_ids.size() && h.unique_tp == h.unique_tp_ids.size(),
                     "counts disagree with id lists for " + h.rule_name);
        }
    }
    const auto& bec = first.rows.back();
    c.expect(bec.generated.has_value(), "verbatim holdout produced no rule");
    if (bec.generated) {
        auto generated = bec.generated->hunt;
        c.expect(generated.rule_name != bec.human.hunt.rule_name, "names should differ");
        generated.rule_name = bec.human.hunt.rule_name;
        c.expect(generated == bec.human.hunt, "verbatim rule hunt differs from the human rule");
    }
    c.expect(document.dump() == holdout::to_json(second).dump(), "equal-seed runs differ");
}

void sample_rules(Check& c)
{
    for (const auto* rel : {"rules/eml_svg_javascript.mql", "samples/generated_svg_eml.mql"}) {
        const auto r =
            holdout::run_process({RULEBENCH_CLI, "validate", rulebench::testing::fixture(rel).string()}, "", std::chrono::seconds(30));
        c.expect(r.exit_code == 0, std::string("validate exit ") + std::to_string(r.exit_code) + " for " + rel);
        const auto source = lang::load_rule_file(rulebench::testing::fixture(rel));
        const auto first = lang::parse(source.text);
        c.expect(first.ok(), std::string("parse failed for ") + rel);
        if (!first.ok()) {
            continue;
        }
        const std::string text = lang::unparse(*first.ast);
        const auto second = lang::parse(text);
        c.expect(second.ok() && lang::structurally_equal(*first.ast, *second.ast), std::string("round trip ") + rel);
        c.expect(lang::validate(text).ok, std::string("unparsed text does not validate for ") + rel);
    }
}

std::string corpus_bytes(const corpus::Corpus& corpus)
{
    std::ostringstream out;
    corpus::export_jsonl(corpus, out);
    return out.str() + corpus::to_json(corpus.manifest()).dump();
}

void synthesis(Check& c)
{
    const auto config = corpus::load_synth_config(rulebench::testing::fixture("generator/default.json"));
    const auto a = corpus::synthesize(config, 7);
    const auto b = corpus::synthesize(config, 7);
    c.expect(corpus_bytes(a) == corpus_bytes(b), "synthesis not byte-deterministic");

    const std::map<corpus::Template, std::vector<const char*>> paired{
        {corpus::Template::CallbackPdf, {"rules/callback_pdf.mql"}},
        {corpus::Template::SvgSmuggling, {"rules/eml_svg_javascript.mql", "samples/generated_svg_eml.mql"}},
        {corpus::Template::BecReplyTo, {"rules/bec_reply_to.mql"}},
        {corpus::Template::BrandImpersonation, {"rules/brand_impersonation_coinbase.mql"}},
        {corpus::Template::FakeVoicemail, {"rules/fake_voicemail.mql"}},
        {corpus::Template::GiveawayScam, {"rules/giveaway_scam_piano.mql"}},
        {corpus::Template::LookalikeDomain, {"rules/lookalike_domain.mql"}},
    };
    std::map<corpus::Template, std::vector<eval::CompiledRule>> rules;
    for (const auto& [family, files] : paired) {
        for (const auto* file : files) {
            rules[family].emplace_back(rulebench::testing::must_parse(lang::load_rule_file(rulebench::testing::fixture(file)).text));
        }
    }
    c.expect(rules.size() == corpus::malicious_templates.size(), "a malicious family has no paired rule");

    std::size_t checked = 0;
    for (const auto& label : a.labels()) {
        if (label.verdict != corpus::Verdict::Malicious) {
            continue;
        }
        const auto family = corpus::template_from_label_source(label.source);
        c.expect(family.has_value(), "label source without a family: " + label.source);
        if (!family) {
            continue;
        }
        for (const auto& rule : rules.at(*family)) {
            c.expect(rule.matches(a.message(label.message_id)), "paired rule missed " + label.message_id);
        }
        ++checked;
    }
    c.expect(checked > 0, "no malicious messages");

    Rng rng(5);
    for (const auto family : corpus::malicious_templates) {
        for (int i = 0; i < 200; ++i) {
            const auto m = corpus::synthesize_message(family, rng, "x" + std::to_string(i), "2025-03-01T00:00:00Z");
            for (const auto& rule : rules.at(family)) {
                c.expect(rule.matches(m), "paired rule missed a " + std::string(corpus::to_string(family)) + " message");
            }
        }
    }
}

}  // namespace

int main()
{
    run("AC1", "detection score against the 22 reference rows", 1.0, detection_rows);
    run("AC2", "total cost equals C * k_pass", 1.0, cost_identity);
    run("AC3", "simulated cumulative cost is increasing and linear at constant cost", 5.0, cost_simulation);
    run("AC4", "brittleness logistic and monotonicity properties", 5.0, brittleness_properties);
    run("AC5", "hunt matches the reference evaluator and is worker-independent", 60.0, hunt_equivalence);
    run("AC6", "holdout rows recompute, verbatim rule matches, runs are reproducible", 120.0, holdout_runs);
    run("AC7", "both sample rules validate and round-trip", 1.0, sample_rules);
    run("AC8", "synthesis is deterministic and paired rules flag every malicious message", 10.0, synthesis);
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
