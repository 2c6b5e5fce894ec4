// SPDX-License-Identifier: Apache-2.0

#include "rulebench/holdout/harness.hpp"

#include "rulebench/corpus/corpus_io.hpp"
#include "rulebench/corpus/synth.hpp"
#include "rulebench/holdout/feedback.hpp"
#include "rulebench/holdout/protocol.hpp"
#include "rulebench/holdout/subprocess.hpp"
#include "rulebench/rule_lang/diagnostic_json.hpp"
#include "rulebench/rule_lang/rule_file.hpp"
#include "rulebench/rule_lang/validator.hpp"
#include "rulebench/version.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rulebench::holdout {
namespace {

using nlohmann::json;

struct BaselineRule {
    lang::RuleSource source;
    lang::RuleAst ast;
    eval::HitSet hits;
};

struct Context {
    const HoldoutConfig& config;
    const corpus::Corpus& corpus;
    metrics::Taxonomy taxonomy;
    std::vector<BaselineRule> baseline;
    double spent = 0.0;
    bool halted = false;
};

std::vector<eval::HitSet> baseline_without(const Context& ctx, const std::string& name)
{
    std::vector<eval::HitSet> out;
    for (const auto& rule : ctx.baseline) {
        if (rule.source.name != name) {
            out.push_back(rule.hits);
        }
    }
    return out;
}

RuleEvaluation evaluate(const Context& ctx, std::string name, std::string text, const lang::RuleAst& ast,
                        const eval::HitSet& hits, const std::vector<eval::HitSet>& baseline)
{
    RuleEvaluation e;
    e.rule_name = std::move(name);
    e.rule_text = std::move(text);
    e.hunt = eval::classify(hits, ctx.corpus, baseline);
    e.score = metrics::detection_score(e.hunt.tp, e.hunt.fp, e.hunt.unique_tp);
    e.brittleness = metrics::analyze_brittleness(ast, ctx.taxonomy);
    return e;
}

std::optional<double> partial_cost(const std::string& stdout_text)
{
    try {
        const json j = json::parse(stdout_text);
        if (j.is_object() && j.contains("reported_cost_dollars") && j.at("reported_cost_dollars").is_number()) {
            const double cost = j.at("reported_cost_dollars").get<double>();
            if (std::isfinite(cost) && cost >= 0.0) {
                return cost;
            }
        }
    } catch (const json::exception&) {
    }
    return std::nullopt;
}

HoldoutRow run_one(Context& ctx, const HoldoutSpec& spec, const BaselineRule& held, const std::string& sample_id)
{
    const auto& config = ctx.config;
    HoldoutRow row;
    row.rule_name = spec.rule_name;
    row.sample_message_id = sample_id;
    const std::vector<eval::HitSet> baseline = baseline_without(ctx, held.source.name);
    for (const auto& h : baseline) {
        row.baseline_rules.push_back(h.rule_name);
    }
    std::sort(row.baseline_rules.begin(), row.baseline_rules.end());
    row.human = evaluate(ctx, held.source.name, held.source.text, held.ast, held.hits, baseline);

    const corpus::Message& sample = ctx.corpus.message(sample_id);
    const std::vector<std::string>& command = spec.generator_command ? *spec.generator_command : config.generator_command;
    const auto timeout = std::chrono::milliseconds(static_cast<long long>(config.timeout_seconds * 1000.0));
    FeedbackOptions feedback_options;
    feedback_options.fp_exemplars = config.fp_exemplars;
    const std::string generated_name = held.source.name + " (generated)";

    json feedback = json::object();
    row.status = "non_converged";
    for (std::size_t attempt = 1; attempt <= config.max_attempts; ++attempt) {
        GeneratorRequest request;
        request.attempt = attempt;
        request.seed = config.seed;
        request.sample_message = sample;
        request.feedback = feedback;

        AttemptRecord record;
        record.index = attempt;
        record.feedback_sent = feedback;
        const ProcessResult proc = run_process(command, to_json(request).dump() + "\n", timeout);

        FeedbackInput next;
        std::optional<GeneratorResponse> response;
        if (!proc.started) {
            record.outcome = "generator_error";
            record.error = proc.error;
        } else if (proc.timed_out) {
            record.outcome = "timeout";
            record.error = "generator timed out after " + std::to_string(config.timeout_seconds) + " s";
            record.cost_dollars = partial_cost(proc.stdout_text).value_or(0.0);
        } else if (proc.exit_code != 0) {
            record.outcome = "generator_error";
            record.error = "generator exited with status " + std::to_string(proc.exit_code);
            if (!proc.stderr_text.empty()) {
                record.error += ": " + proc.stderr_text.substr(0, 500);
            }
            record.cost_dollars = partial_cost(proc.stdout_text).value_or(0.0);
        } else {
            try {
                response = parse_response(proc.stdout_text);
            } catch (const ProtocolError& e) {
                record.outcome = "generator_error";
                record.error = e.what();
                record.cost_dollars = partial_cost(proc.stdout_text).value_or(0.0);
            }
        }

        if (response) {
            record.cost_dollars = response->reported_cost_dollars;
            record.rule_text = response->rule_text;
            record.generator_metadata = response->generator_metadata;
            lang::ValidationResult validation = lang::validate(response->rule_text);
            record.diagnostics = validation.diagnostics;
            record.passed_validation = validation.ok;
            record.outcome = validation.ok ? "valid" : "invalid";
            next.validation = validation.diagnostics;
            if (validation.ok) {
                const eval::CompiledRule compiled(*validation.ast);
                const eval::HitSet hits =
                    eval::hunt(compiled, ctx.corpus, generated_name, eval::HuntOptions{config.workers});
                row.generated = evaluate(ctx, generated_name, response->rule_text, *validation.ast, hits, baseline);
                if (!row.k_pass) {
                    row.k_pass = attempt;
                }
                row.status = "passed";
                next.hunt = row.generated->hunt;
                next.sample_hit = compiled.matches(sample);
                next.brittleness = row.generated->brittleness;
            }
        } else {
            next.generator_error = record.error;
        }

        row.ledger.record(record.cost_dollars, record.passed_validation);
        ctx.spent += record.cost_dollars;
        feedback = build_feedback(next, feedback_options);
        const bool accepted = record.passed_validation;
        if (accepted) {
            row.converged = feedback.at("converged").get<bool>();
        }
        row.attempts.push_back(std::move(record));

        if (config.budget_dollars && ctx.spent > *config.budget_dollars) {
            ctx.halted = true;
            row.status = "budget_exceeded";
            break;
        }
        if (accepted && (!config.refine_after_pass || row.converged)) {
            break;
        }
    }
    row.total_cost = row.ledger.empty() ? 0.0 : metrics::total_cost(row.ledger);
    for (const auto& a : row.ledger.attempts()) {
        row.spent_dollars += a.cost_dollars;
    }
    return row;
}

HoldoutSummary summarize(const std::vector<HoldoutRow>& rows)
{
    HoldoutSummary s;
    std::vector<metrics::AttemptLedger> ledgers;
    double cost_sum = 0.0;
    std::size_t attempts = 0;
    std::size_t first_pass = 0;
    for (const auto& row : rows) {
        if (row.ledger.empty()) {
            continue;
        }
        ledgers.push_back(row.ledger);
        for (const auto& a : row.ledger.attempts()) {
            cost_sum += a.cost_dollars;
            ++attempts;
        }
        first_pass += row.ledger.attempts().front().passed_validation ? 1 : 0;
    }
    if (ledgers.empty()) {
        return s;
    }
    s.mean_attempt_cost = cost_sum / static_cast<double>(attempts);
    s.pass1_rate = static_cast<double>(first_pass) / static_cast<double>(ledgers.size());
    s.cost_to_pass = metrics::cost_to_pass(s.mean_attempt_cost, *s.pass1_rate);
    s.pass_at_k_curve = metrics::pass_at_k_curve(ledgers);
    return s;
}

json score_json(const metrics::DetectionScore& s)
{
    if (!s.defined) {
        return json{{"defined", false}, {"precision", nullptr}, {"unique_precision", nullptr}, {"score", nullptr}};
    }
    return json{{"defined", true}, {"precision", s.precision}, {"unique_precision", s.unique_precision}, {"score", s.score}};
}

json evaluation_json(const RuleEvaluation& e)
{
    return json{{"rule_name", e.rule_name},
                {"rule_text", e.rule_text},
                {"hunt", eval::to_json(e.hunt)},
                {"score", score_json(e.score)},
                {"brittleness", metrics::to_json(e.brittleness)}};
}

json attempt_json(const AttemptRecord& a)
{
    return json{{"index", a.index},
                {"cost_dollars", a.cost_dollars},
                {"passed_validation", a.passed_validation},
                {"outcome", a.outcome},
                {"rule_text", a.rule_text},
                {"diagnostics", lang::to_json(a.diagnostics)},
                {"error", a.error},
                {"generator_metadata", a.generator_metadata},
                {"feedback_sent", a.feedback_sent}};
}

}  // namespace

HoldoutReport run_holdout(const HoldoutConfig& config)
{
    corpus::Corpus corpus;
    try {
        if (!config.synth_config_path.empty()) {
            corpus = corpus::synthesize(corpus::load_synth_config(config.synth_config_path), config.seed);
        } else {
            corpus = corpus::ingest(config.corpus_path);
        }
    } catch (const corpus::CorpusError& e) {
        throw ConfigError(std::string("corpus: ") + e.what());
    }
    return run_holdout(config, corpus);
}

HoldoutReport run_holdout(const HoldoutConfig& config, const corpus::Corpus& corpus)
{
    Context ctx{config, corpus, {}, {}};
    if (!config.taxonomy_path.empty()) {
        try {
            ctx.taxonomy = metrics::load_taxonomy(config.taxonomy_path);
        } catch (const metrics::MetricsError& e) {
            throw ConfigError(e.what());
        }
    }

    std::vector<lang::RuleSource> sources;
    try {
        sources = lang::load_rule_set(config.baseline_ruleset_path);
    } catch (const lang::RuleFileError& e) {
        throw ConfigError(std::string("baseline: ") + e.what());
    }
    for (auto& source : sources) {
        lang::ValidationResult v = lang::validate(source.text);
        if (!v.ok) {
            std::string first;
            for (const auto& d : v.diagnostics) {
                if (d.severity == lang::Severity::error) {
                    first = lang::format_diagnostic(d, source.name);
                    break;
                }
            }
            throw ConfigError("baseline rule '" + source.name + "' does not validate: " + first);
        }
        const eval::CompiledRule compiled(*v.ast);
        eval::HitSet hits = eval::hunt(compiled, corpus, source.name, eval::HuntOptions{config.workers});
        ctx.baseline.push_back(BaselineRule{std::move(source), std::move(*v.ast), std::move(hits)});
    }

    // Preconditions for every holdout, before any generator is launched.
    std::vector<std::pair<const BaselineRule*, std::string>> plan;
    for (const auto& spec : config.holdouts) {
        const auto it = std::find_if(ctx.baseline.begin(), ctx.baseline.end(),
                                     [&spec](const BaselineRule& r) { return r.source.name == spec.rule_name; });
        if (it == ctx.baseline.end()) {
            throw ConfigError("holdout rule '" + spec.rule_name + "' is not in the baseline set");
        }
        std::string sample;
        if (spec.sample_message_id) {
            sample = *spec.sample_message_id;
            if (!corpus.contains(sample)) {
                throw ConfigError("sample message '" + sample + "' is not in the corpus");
            }
            if (!std::binary_search(it->hits.hit_ids.begin(), it->hits.hit_ids.end(), sample)) {
                throw HarnessError("rule '" + spec.rule_name + "' does not flag its sample message '" + sample + "'");
            }
        } else {
            const auto tp = std::find_if(it->hits.hit_ids.begin(), it->hits.hit_ids.end(), [&corpus](const std::string& id) {
                return corpus.label_of(id) == corpus::LabelState::Malicious;
            });
            if (tp == it->hits.hit_ids.end()) {
                throw HarnessError("rule '" + spec.rule_name + "' flags no malicious message to use as a sample");
            }
            sample = *tp;
        }
        plan.emplace_back(&*it, std::move(sample));
    }

    HoldoutReport report;
    report.seed = config.seed;
    report.config_digest = digest(config.source);
    report.corpus_manifest = corpus.manifest();
    report.status = "complete";
    for (std::size_t i = 0; i < config.holdouts.size(); ++i) {
        report.rows.push_back(run_one(ctx, config.holdouts[i], *plan[i].first, plan[i].second));
        if (ctx.halted) {
            report.status = "budget_exceeded";
            break;
        }
    }
    report.summary = summarize(report.rows);
    return report;
}

json to_json(const HoldoutReport& report)
{
    json rows = json::array();
    for (const auto& row : report.rows) {
        json attempts = json::array();
        for (const auto& a : row.attempts) {
            attempts.push_back(attempt_json(a));
        }
        rows.push_back({{"rule_name", row.rule_name},
                        {"sample_message_id", row.sample_message_id},
                        {"status", row.status},
                        {"converged", row.converged},
                        {"k_pass", row.k_pass ? json(*row.k_pass) : json(nullptr)},
                        {"total_cost", row.total_cost},
                        {"spent_dollars", row.spent_dollars},
                        {"baseline_rules", row.baseline_rules},
                        {"human", evaluation_json(row.human)},
                        {"generated", row.generated ? evaluation_json(*row.generated) : json(nullptr)},
                        {"ledger", metrics::to_json(row.ledger)},
                        {"attempts", std::move(attempts)}});
    }
    const auto& s = report.summary;
    json summary{{"mean_attempt_cost", s.mean_attempt_cost},
                 {"pass1_rate", s.pass1_rate ? json(*s.pass1_rate) : json(nullptr)},
                 {"cost_to_pass", s.cost_to_pass ? metrics::to_json(*s.cost_to_pass) : json(nullptr)},
                 {"pass_at_k_curve", metrics::to_json(s.pass_at_k_curve)}};
    return json{{"schema_version", report_schema_version},
                {"tool_version", tool_version},
                {"seed", report.seed},
                {"config_digest", report.config_digest},
                {"corpus_manifest", corpus::to_json(report.corpus_manifest)},
                {"status", report.status},
                {"rows", std::move(rows)},
                {"summary", std::move(summary)}};
}

}  // namespace rulebench::holdout
