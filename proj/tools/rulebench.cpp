// SPDX-License-Identifier: Apache-2.0
//
// rulebench: validate, hunt, score and compare detection rules.
//
// Exit status: 0 success, 1 validation failed, 2 usage or configuration
// error, 3 runtime failure.

#include "rulebench/corpus/corpus_io.hpp"
#include "rulebench/corpus/synth.hpp"
#include "rulebench/eval/hunt.hpp"
#include "rulebench/holdout/config.hpp"
#include "rulebench/holdout/harness.hpp"
#include "rulebench/metrics/brittleness.hpp"
#include "rulebench/metrics/detection.hpp"
#include "rulebench/report/render.hpp"
#include "rulebench/rule_lang/diagnostic_json.hpp"
#include "rulebench/rule_lang/rule_file.hpp"
#include "rulebench/rule_lang/validator.hpp"
#include "rulebench/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using rulebench::report::Format;

enum Exit : int { ok = 0, validation_failed = 1, usage_error = 2, runtime_failure = 3 };

// Raised for bad input files and flags; mapped to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Defaults read from --config or $RULEBENCH_CONFIG. Flags win over these.
struct Settings {
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<std::string> taxonomy;
    std::optional<std::string> baseline;
};

Settings load_settings(const std::string& flag_path)
{
    std::string path = flag_path;
    if (path.empty()) {
        if (const char* env = std::getenv("RULEBENCH_CONFIG"); env != nullptr) {
            path = env;
        }
    }
    Settings s;
    if (path.empty()) {
        return s;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read config " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw UsageError("config " + path + ": expected an object");
    }
    const fs::path base = fs::absolute(path).parent_path();
    auto relative = [&base](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "workers") {
                s.workers = value.get<unsigned>();
            } else if (key == "seed") {
                s.seed = value.get<std::uint64_t>();
            } else if (key == "format") {
                s.format = value.get<std::string>();
            } else if (key == "taxonomy") {
                s.taxonomy = relative(value.get<std::string>());
            } else if (key == "baseline") {
                s.baseline = relative(value.get<std::string>());
            } else {
                throw UsageError("config " + path + ": unknown field '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    return s;
}

template <typename T>
T pick(const std::optional<T>& flag, const std::optional<T>& config, T fallback)
{
    return flag ? *flag : (config ? *config : fallback);
}

Format resolve_format(const std::optional<std::string>& flag, const Settings& settings, Format fallback)
{
    const auto name = flag ? flag : settings.format;
    if (!name) {
        return fallback;
    }
    const auto format = rulebench::report::parse_format(*name);
    if (!format) {
        throw UsageError("unknown format '" + *name + "' (expected markdown, csv or structured)");
    }
    return *format;
}

rulebench::lang::RuleSource read_rule(const std::string& path)
{
    try {
        return rulebench::lang::load_rule_file(path);
    } catch (const rulebench::lang::RuleFileError& e) {
        throw UsageError(e.what());
    }
}

rulebench::corpus::Corpus read_corpus(const std::string& path)
{
    try {
        return rulebench::corpus::ingest(path);
    } catch (const rulebench::corpus::CorpusError& e) {
        throw UsageError(std::string("corpus: ") + e.what());
    }
}

rulebench::metrics::Taxonomy read_taxonomy(const std::optional<std::string>& path)
{
    if (!path) {
        return {};
    }
    try {
        return rulebench::metrics::load_taxonomy(*path);
    } catch (const rulebench::metrics::MetricsError& e) {
        throw UsageError(e.what());
    }
}

void print_diagnostics(const std::vector<rulebench::lang::Diagnostic>& diagnostics, const std::string& file)
{
    for (const auto& d : diagnostics) {
        std::cerr << rulebench::lang::format_diagnostic(d, file) << "\n";
    }
}

// Validates and prints diagnostics; nullopt when the rule is invalid.
std::optional<rulebench::lang::RuleAst> checked_ast(const rulebench::lang::RuleSource& rule, const std::string& file)
{
    auto result = rulebench::lang::validate(rule.text);
    print_diagnostics(result.diagnostics, file);
    if (!result.ok) {
        return std::nullopt;
    }
    return std::move(result.ast);
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("error writing " + path);
    }
}

// ---- subcommands -----------------------------------------------------------

struct ValidateArgs {
    std::string rule;
    std::optional<std::string> format;
};

int cmd_validate(const ValidateArgs& args, const Settings& settings)
{
    const auto rule = read_rule(args.rule);
    const auto result = rulebench::lang::validate(rule.text);
    print_diagnostics(result.diagnostics, args.rule);
    if (resolve_format(args.format, settings, Format::markdown) == Format::structured) {
        std::cout << json{{"rule_name", rule.name},
                          {"ok", result.ok},
                          {"comment_count", result.comment_count},
                          {"diagnostics", rulebench::lang::to_json(result.diagnostics)}}
                         .dump(2)
                  << "\n";
    }
    return result.ok ? ok : validation_failed;
}

struct HuntArgs {
    std::string rule;
    std::string corpus;
    std::optional<std::string> baseline;
    std::optional<unsigned> workers;
    std::optional<std::string> format;
};

int cmd_hunt(const HuntArgs& args, const Settings& settings)
{
    const auto rule = read_rule(args.rule);
    const auto ast = checked_ast(rule, args.rule);
    if (!ast) {
        return validation_failed;
    }
    const auto corpus = read_corpus(args.corpus);
    const rulebench::eval::HuntOptions options{pick<unsigned>(args.workers, settings.workers, 1)};

    std::vector<rulebench::eval::HitSet> baseline;
    if (const auto dir = args.baseline ? args.baseline : settings.baseline) {
        std::vector<rulebench::lang::RuleSource> sources;
        try {
            sources = rulebench::lang::load_rule_set(*dir);
        } catch (const rulebench::lang::RuleFileError& e) {
            throw UsageError(std::string("baseline: ") + e.what());
        }
        for (const auto& source : sources) {
            if (source.name == rule.name) {
                continue;  // never compete with itself
            }
            const auto v = rulebench::lang::validate(source.text);
            if (!v.ok) {
                throw UsageError("baseline rule '" + source.name + "' does not validate");
            }
            baseline.push_back(rulebench::eval::hunt(rulebench::eval::CompiledRule(*v.ast), corpus, source.name, options));
        }
    }
    const auto hits = rulebench::eval::hunt(rulebench::eval::CompiledRule(*ast), corpus, rule.name, options);
    const auto result = rulebench::eval::classify(hits, corpus, baseline);
    if (!result.warnings.empty()) {
        std::cerr << args.rule << ": warning: " << result.warnings.type_mismatches << " type mismatches, "
                  << result.warnings.regex_budget_exceeded << " regex budget overruns, "
                  << result.warnings.invalid_patterns << " invalid patterns\n";
    }
    const Format format = resolve_format(args.format, settings, Format::structured);
    if (format == Format::structured) {
        std::cout << rulebench::eval::to_json(result).dump(2) << "\n";
    } else {
        std::cout << rulebench::report::render_detection_table({rulebench::report::detection_row(result)}, format);
    }
    return ok;
}

struct ScoreArgs {
    std::optional<std::string> hunt_result;
    std::optional<std::uint64_t> tp;
    std::optional<std::uint64_t> fp;
    std::optional<std::uint64_t> unique_tp;
    std::optional<std::string> format;
};

int cmd_score(const ScoreArgs& args, const Settings& settings)
{
    std::string name;
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t unique_tp = 0;
    if (args.hunt_result) {
        std::ifstream in(*args.hunt_result, std::ios::binary);
        if (!in) {
            throw UsageError("cannot read " + *args.hunt_result);
        }
        try {
            const auto result = rulebench::eval::hunt_result_from_json(json::parse(in));
            name = result.rule_name;
            tp = result.tp;
            fp = result.fp;
            unique_tp = result.unique_tp;
        } catch (const json::exception& e) {
            throw UsageError(*args.hunt_result + ": " + e.what());
        }
    } else {
        if (!args.tp || !args.fp || !args.unique_tp) {
            throw UsageError("score needs a hunt result file or all of --tp, --fp, --unique-tp");
        }
        tp = *args.tp;
        fp = *args.fp;
        unique_tp = *args.unique_tp;
    }
    rulebench::metrics::DetectionScore score;
    try {
        score = rulebench::metrics::detection_score(tp, fp, unique_tp);
    } catch (const rulebench::metrics::MetricsError& e) {
        throw UsageError(e.what());
    }
    const Format format = resolve_format(args.format, settings, Format::markdown);
    if (format == Format::structured) {
        json out{{"tp", tp}, {"fp", fp}, {"unique_tp", unique_tp}, {"defined", score.defined},
                 {"score_text", rulebench::metrics::format_score(score)}};
        out["precision"] = score.defined ? json(score.precision) : json(nullptr);
        out["unique_precision"] = score.defined ? json(score.unique_precision) : json(nullptr);
        out["score"] = score.defined ? json(score.score) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else if (format == Format::csv) {
        std::cout << "tp,fp,unique_tp,score\n"
                  << tp << "," << fp << "," << unique_tp << "," << rulebench::metrics::format_score(score) << "\n";
    } else {
        std::cout << rulebench::metrics::format_score(score) << "\n";
    }
    return ok;
}

struct BrittlenessArgs {
    std::string rule;
    std::optional<std::string> taxonomy;
    std::optional<double> k;
    std::optional<double> x0;
    std::optional<std::string> format;
};

int cmd_brittleness(const BrittlenessArgs& args, const Settings& settings)
{
    const auto rule = read_rule(args.rule);
    const auto ast = checked_ast(rule, args.rule);
    if (!ast) {
        return validation_failed;
    }
    const auto taxonomy = read_taxonomy(args.taxonomy ? args.taxonomy : settings.taxonomy);
    const double k = args.k.value_or(taxonomy.k);
    if (!(k > 0.0)) {
        throw UsageError("--k must be positive");
    }
    const auto report = rulebench::metrics::analyze_brittleness(*ast, taxonomy, k, args.x0.value_or(taxonomy.x0));
    const Format format = resolve_format(args.format, settings, Format::markdown);
    if (format == Format::structured) {
        json out = rulebench::metrics::to_json(report);
        out["rule_name"] = rule.name;
        std::cout << out.dump(2) << "\n";
        return ok;
    }
    using rulebench::metrics::format_fixed;
    if (format == Format::csv) {
        std::cout << "kind,tag,weight,location\n";
        for (const auto& f : report.findings) {
            std::cout << rulebench::metrics::to_string(f.kind) << "," << f.tag << "," << format_fixed(f.weight, 2)
                      << ",\"" << f.ast_location << "\"\n";
        }
        return ok;
    }
    std::cout << rule.name << ": B = " << format_fixed(report.B, 1) << ", robustness = "
              << format_fixed(report.robustness, 3) << " (R = " << format_fixed(report.rewards_R, 2)
              << ", P = " << format_fixed(report.penalties_P, 2) << ")\n";
    for (const auto& f : report.findings) {
        std::cout << "  " << rulebench::metrics::to_string(f.kind) << " " << f.tag << " @ " << f.ast_location << ": "
                  << f.explanation << "\n";
    }
    return ok;
}

struct SynthArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
};

int cmd_synth(const SynthArgs& args, const Settings& settings)
{
    rulebench::corpus::SynthConfig config;
    try {
        config = rulebench::corpus::load_synth_config(args.config);
    } catch (const rulebench::corpus::CorpusError& e) {
        throw UsageError(e.what());
    }
    rulebench::corpus::Corpus corpus;
    try {
        corpus = rulebench::corpus::synthesize(config, pick<std::uint64_t>(args.seed, settings.seed, 0));
    } catch (const rulebench::corpus::CorpusError& e) {
        throw UsageError(e.what());
    }
    rulebench::corpus::write_corpus(corpus, args.out);
    const auto& m = corpus.manifest();
    std::cerr << "wrote " << m.total << " messages (" << m.malicious << " malicious, " << m.benign << " benign, "
              << m.unlabeled << " unlabeled) to " << args.out << "\n";
    return ok;
}

struct HoldoutArgs {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> format;
};

int cmd_holdout(const HoldoutArgs& args, const Settings& settings)
{
    rulebench::holdout::HoldoutConfig config;
    try {
        config = rulebench::holdout::load_config(args.config);
    } catch (const rulebench::holdout::ConfigError& e) {
        throw UsageError(e.what());
    }
    if (args.seed) {
        config.seed = *args.seed;
    } else if (settings.seed && !config.source.contains("seed")) {
        config.seed = *settings.seed;
    }
    if (args.workers) {
        config.workers = *args.workers;
    } else if (settings.workers && !config.source.contains("workers")) {
        config.workers = *settings.workers;
    }
    rulebench::holdout::HoldoutReport report;
    try {
        report = rulebench::holdout::run_holdout(config);
    } catch (const rulebench::holdout::ConfigError& e) {
        throw UsageError(e.what());
    } catch (const rulebench::holdout::HarnessError& e) {
        throw UsageError(e.what());
    }
    const json document = rulebench::holdout::to_json(report);
    const std::string text = document.dump(2) + "\n";
    if (args.out) {
        write_text(*args.out, text);
    }
    const Format format = resolve_format(args.format, settings, Format::structured);
    if (format == Format::structured) {
        if (!args.out) {
            std::cout << text;
        }
    } else {
        std::cout << rulebench::report::render_report(document, format);
    }
    if (report.status == "budget_exceeded") {
        std::cerr << "budget exceeded; report is partial\n";
        return runtime_failure;
    }
    return ok;
}

struct ReportArgs {
    std::string report;
    std::optional<std::string> format;
};

int cmd_report(const ReportArgs& args, const Settings& settings)
{
    std::ifstream in(args.report, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + args.report);
    }
    json document;
    try {
        document = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(args.report + ": " + e.what());
    }
    try {
        std::cout << rulebench::report::render_report(document, resolve_format(args.format, settings, Format::markdown));
    } catch (const rulebench::report::ReportError& e) {
        throw UsageError(args.report + ": " + e.what());
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Evaluate email detection rules against labeled corpora"};
    app.set_version_flag("--version", std::string(rulebench::tool_version));
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "Defaults file (JSON); falls back to $RULEBENCH_CONFIG");

    ValidateArgs validate_args;
    auto* validate = app.add_subcommand("validate", "Check a rule's syntax, names and scopes");
    validate->add_option("rule", validate_args.rule, "Rule file (.mql)")->required();
    validate->add_option("--format", validate_args.format, "markdown|csv|structured");

    HuntArgs hunt_args;
    auto* hunt = app.add_subcommand("hunt", "Run a rule over a corpus and classify the hits");
    hunt->add_option("rule", hunt_args.rule, "Rule file (.mql)")->required();
    hunt->add_option("corpus", hunt_args.corpus, "Corpus file (.jsonl)")->required();
    hunt->add_option("--baseline", hunt_args.baseline, "Directory of rules for unique-TP accounting");
    hunt->add_option("--workers", hunt_args.workers, "Worker threads (0 = all cores)");
    hunt->add_option("--format", hunt_args.format, "markdown|csv|structured");

    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "Detection score from counts or a hunt result");
    score->add_option("hunt_result", score_args.hunt_result, "Hunt result document");
    score->add_option("--tp", score_args.tp, "True positives");
    score->add_option("--fp", score_args.fp, "False positives");
    score->add_option("--unique-tp", score_args.unique_tp, "Unique true positives");
    score->add_option("--format", score_args.format, "markdown|csv|structured");

    BrittlenessArgs brittle_args;
    auto* brittle = app.add_subcommand("brittleness", "Static robust/brittle pattern analysis");
    brittle->add_option("rule", brittle_args.rule, "Rule file (.mql)")->required();
    brittle->add_option("--taxonomy", brittle_args.taxonomy, "Weights and logistic parameters (JSON)");
    brittle->add_option("--k", brittle_args.k, "Logistic steepness");
    brittle->add_option("--x0", brittle_args.x0, "Logistic midpoint");
    brittle->add_option("--format", brittle_args.format, "markdown|csv|structured");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
    synth->add_option("config", synth_args.config, "Generator config (JSON)")->required();
    synth->add_option("--out", synth_args.out, "Output corpus path")->required();
    synth->add_option("--seed", synth_args.seed, "Random seed (default 0)");

    HoldoutArgs holdout_args;
    auto* holdout = app.add_subcommand("holdout", "Run the holdout comparison");
    holdout->add_option("config", holdout_args.config, "Holdout config (JSON)")->required();
    holdout->add_option("--out", holdout_args.out, "Write the report document here");
    holdout->add_option("--seed", holdout_args.seed, "Random seed (overrides the config)");
    holdout->add_option("--workers", holdout_args.workers, "Hunt worker threads");
    holdout->add_option("--format", holdout_args.format, "markdown|csv|structured");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "Render tables from a holdout report");
    report->add_option("report", report_args.report, "Report document")->required();
    report->add_option("--format", report_args.format, "markdown|csv|structured");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage_error;
    }

    try {
        const Settings settings = load_settings(config_path);
        if (validate->parsed()) {
            return cmd_validate(validate_args, settings);
        }
        if (hunt->parsed()) {
            return cmd_hunt(hunt_args, settings);
        }
        if (score->parsed()) {
            return cmd_score(score_args, settings);
        }
        if (brittle->parsed()) {
            return cmd_brittleness(brittle_args, settings);
        }
        if (synth->parsed()) {
            return cmd_synth(synth_args, settings);
        }
        if (holdout->parsed()) {
            return cmd_holdout(holdout_args, settings);
        }
        if (report->parsed()) {
            return cmd_report(report_args, settings);
        }
    } catch (const UsageError& e) {
        std::cerr << "rulebench: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        std::cerr << "rulebench: " << e.what() << "\n";
        return runtime_failure;
    }
    return usage_error;
}
