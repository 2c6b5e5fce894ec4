// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rulebench::holdout {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HoldoutSpec {
    std::string rule_name;
    // Defaults to the first (sorted) malicious message the rule flags.
    std::optional<std::string> sample_message_id;
    // Overrides HoldoutConfig::generator_command for this holdout.
    std::optional<std::vector<std::string>> generator_command;
};

/// Config file layout (JSON; relative paths resolve against the file's
/// directory, and so do generator argv entries starting with "./" or "../"):
///
///   {
///     "corpus_path": "corpus.jsonl",        // or "synth_config_path": "gen.json"
///     "baseline_ruleset_path": "rules/",
///     "holdouts": [{"rule_name": "...", "sample_message_id": "...", "generator_command": [...]}],
///     "generator_command": ["prog", "arg"],
///     "max_attempts": 5,
///     "budget_dollars": 100.0,
///     "taxonomy_path": "taxonomy.json",
///     "seed": 0,
///     "workers": 1,
///     "timeout_seconds": 300,
///     "refine_after_pass": false,
///     "fp_exemplars": 5
///   }
struct HoldoutConfig {
    std::filesystem::path corpus_path;
    std::filesystem::path synth_config_path;
    std::filesystem::path baseline_ruleset_path;
    std::vector<HoldoutSpec> holdouts;
    std::vector<std::string> generator_command;
    std::size_t max_attempts = 5;
    std::optional<double> budget_dollars;
    std::filesystem::path taxonomy_path;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    double timeout_seconds = 300.0;
    bool refine_after_pass = false;
    std::size_t fp_exemplars = 5;

    // The document as read, before path resolution; digested into reports.
    nlohmann::json source = nlohmann::json::object();
};

/// Throws ConfigError on unknown fields, wrong types, missing required
/// fields, or out-of-range values.
HoldoutConfig config_from_json(const nlohmann::json& document, const std::filesystem::path& base_dir);
HoldoutConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64 over the compact dump of `document`, as 16 hex digits.
std::string digest(const nlohmann::json& document);

}  // namespace rulebench::holdout
