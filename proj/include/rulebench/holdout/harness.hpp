// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/corpus.hpp"
#include "rulebench/eval/hunt.hpp"
#include "rulebench/holdout/config.hpp"
#include "rulebench/metrics/brittleness.hpp"
#include "rulebench/metrics/cost.hpp"
#include "rulebench/metrics/detection.hpp"
#include "rulebench/rule_lang/diagnostic.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rulebench::holdout {

inline constexpr int report_schema_version = 1;

struct RuleEvaluation {
    std::string rule_name;
    std::string rule_text;
    eval::HuntResult hunt;
    metrics::DetectionScore score;
    metrics::BrittlenessReport brittleness;
};

struct AttemptRecord {
    std::size_t index = 0;
    double cost_dollars = 0.0;
    bool passed_validation = false;
    // "valid", "invalid", "generator_error" or "timeout"
    std::string outcome;
    std::string rule_text;
    std::vector<lang::Diagnostic> diagnostics;
    std::string error;
    nlohmann::json generator_metadata = nlohmann::json::object();
    nlohmann::json feedback_sent = nlohmann::json::object();
};

struct HoldoutRow {
    std::string rule_name;
    std::string sample_message_id;
    std::vector<std::string> baseline_rules;  // shared by both evaluations
    RuleEvaluation human;
    std::optional<RuleEvaluation> generated;  // last accepted generated rule
    metrics::AttemptLedger ledger;
    std::vector<AttemptRecord> attempts;
    std::optional<std::size_t> k_pass;
    double total_cost = 0.0;    // through the first passing attempt
    double spent_dollars = 0.0;  // every attempt, including refinements
    // "passed", "non_converged" (no valid rule within max_attempts) or
    // "budget_exceeded"
    std::string status;
    bool converged = false;  // feedback reported all-green for the accepted rule
};

struct HoldoutSummary {
    double mean_attempt_cost = 0.0;
    std::optional<double> pass1_rate;
    std::optional<metrics::CostToPass> cost_to_pass;
    std::vector<metrics::PassAtKPoint> pass_at_k_curve;
};

struct HoldoutReport {
    std::uint64_t seed = 0;
    std::string config_digest;
    corpus::Manifest corpus_manifest;
    std::string status;  // "complete" or "budget_exceeded"
    std::vector<HoldoutRow> rows;
    HoldoutSummary summary;
};

class HarnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Loads the corpus and baseline, checks every holdout's sample against
/// its rule, then runs the attempt loop per holdout. Throws ConfigError or
/// HarnessError before any generator call when inputs are inconsistent.
HoldoutReport run_holdout(const HoldoutConfig& config);

/// Same, over an already-loaded corpus.
HoldoutReport run_holdout(const HoldoutConfig& config, const corpus::Corpus& corpus);

/// Deterministic serialization: no timestamps, sorted object keys.
nlohmann::json to_json(const HoldoutReport& report);

}  // namespace rulebench::holdout
