// SPDX-License-Identifier: Apache-2.0

#include "rulebench/holdout/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace rulebench::holdout {
namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value)
{
    const std::filesystem::path p(value);
    return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::vector<std::string> command(const json& j, const std::filesystem::path& base, const std::string& where)
{
    if (!j.is_array() || j.empty()) {
        throw ConfigError(where + " must be a nonempty array of strings");
    }
    std::vector<std::string> argv;
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw ConfigError(where + " must be a nonempty array of strings");
        }
        std::string arg = item.get<std::string>();
        if (arg.rfind("./", 0) == 0 || arg.rfind("../", 0) == 0) {
            arg = resolve(base, arg).string();
        }
        argv.push_back(std::move(arg));
    }
    return argv;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where)
{
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError(where + ": unknown field '" + key + "'");
        }
    }
}

const json& typed(const json& j, const char* key, json::value_t type, const char* type_name)
{
    const json& v = j.at(key);
    const bool ok = type == json::value_t::number_float ? v.is_number()
                    : type == json::value_t::number_unsigned ? v.is_number_unsigned()
                                                             : v.type() == type;
    if (!ok) {
        throw ConfigError(std::string("holdout config: '") + key + "' must be " + type_name);
    }
    return v;
}

}  // namespace

HoldoutConfig config_from_json(const json& j, const std::filesystem::path& base_dir)
{
    if (!j.is_object()) {
        throw ConfigError("holdout config: expected an object");
    }
    reject_unknown(j,
                   {"corpus_path", "synth_config_path", "baseline_ruleset_path", "holdouts", "generator_command",
                    "max_attempts", "budget_dollars", "taxonomy_path", "seed", "workers", "timeout_seconds",
                    "refine_after_pass", "fp_exemplars"},
                   "holdout config");
    HoldoutConfig c;
    c.source = j;
    const bool has_corpus = j.contains("corpus_path");
    const bool has_synth = j.contains("synth_config_path");
    if (has_corpus == has_synth) {
        throw ConfigError("holdout config: exactly one of 'corpus_path' or 'synth_config_path' is required");
    }
    if (has_corpus) {
        c.corpus_path = resolve(base_dir, typed(j, "corpus_path", json::value_t::string, "a string").get<std::string>());
    } else {
        c.synth_config_path =
            resolve(base_dir, typed(j, "synth_config_path", json::value_t::string, "a string").get<std::string>());
    }
    if (!j.contains("baseline_ruleset_path")) {
        throw ConfigError("holdout config: 'baseline_ruleset_path' is required");
    }
    c.baseline_ruleset_path =
        resolve(base_dir, typed(j, "baseline_ruleset_path", json::value_t::string, "a string").get<std::string>());
    if (j.contains("generator_command")) {
        c.generator_command = command(j.at("generator_command"), base_dir, "holdout config: 'generator_command'");
    }
    if (!j.contains("holdouts")) {
        throw ConfigError("holdout config: 'holdouts' is required");
    }
    std::set<std::string> seen;
    for (const auto& h : typed(j, "holdouts", json::value_t::array, "an array")) {
        if (!h.is_object()) {
            throw ConfigError("holdout config: each holdout must be an object");
        }
        reject_unknown(h, {"rule_name", "sample_message_id", "generator_command"}, "holdout entry");
        HoldoutSpec spec;
        if (!h.contains("rule_name") || !h.at("rule_name").is_string()) {
            throw ConfigError("holdout entry: 'rule_name' must be a string");
        }
        spec.rule_name = h.at("rule_name").get<std::string>();
        if (!seen.insert(spec.rule_name).second) {
            throw ConfigError("holdout entry: rule '" + spec.rule_name + "' is listed twice");
        }
        if (h.contains("sample_message_id")) {
            if (!h.at("sample_message_id").is_string()) {
                throw ConfigError("holdout entry: 'sample_message_id' must be a string");
            }
            spec.sample_message_id = h.at("sample_message_id").get<std::string>();
        }
        if (h.contains("generator_command")) {
            spec.generator_command =
                command(h.at("generator_command"), base_dir, "holdout entry '" + spec.rule_name + "'");
        } else if (c.generator_command.empty()) {
            throw ConfigError("holdout entry '" + spec.rule_name + "' has no generator_command and no default is set");
        }
        c.holdouts.push_back(std::move(spec));
    }
    if (c.holdouts.empty()) {
        throw ConfigError("holdout config: 'holdouts' is empty");
    }
    if (j.contains("max_attempts")) {
        c.max_attempts = typed(j, "max_attempts", json::value_t::number_unsigned, "a positive integer").get<std::size_t>();
        if (c.max_attempts == 0) {
            throw ConfigError("holdout config: 'max_attempts' must be a positive integer");
        }
    }
    if (j.contains("budget_dollars") && !j.at("budget_dollars").is_null()) {
        c.budget_dollars = typed(j, "budget_dollars", json::value_t::number_float, "a number").get<double>();
        if (!(*c.budget_dollars >= 0.0)) {
            throw ConfigError("holdout config: 'budget_dollars' must be >= 0");
        }
    }
    if (j.contains("taxonomy_path")) {
        c.taxonomy_path =
            resolve(base_dir, typed(j, "taxonomy_path", json::value_t::string, "a string").get<std::string>());
    }
    if (j.contains("seed")) {
        c.seed = typed(j, "seed", json::value_t::number_unsigned, "a nonnegative integer").get<std::uint64_t>();
    }
    if (j.contains("workers")) {
        c.workers = typed(j, "workers", json::value_t::number_unsigned, "a nonnegative integer").get<unsigned>();
    }
    if (j.contains("timeout_seconds")) {
        c.timeout_seconds = typed(j, "timeout_seconds", json::value_t::number_float, "a number").get<double>();
        if (!(c.timeout_seconds > 0.0)) {
            throw ConfigError("holdout config: 'timeout_seconds' must be positive");
        }
    }
    if (j.contains("refine_after_pass")) {
        c.refine_after_pass = typed(j, "refine_after_pass", json::value_t::boolean, "a boolean").get<bool>();
    }
    if (j.contains("fp_exemplars")) {
        c.fp_exemplars =
            typed(j, "fp_exemplars", json::value_t::number_unsigned, "a nonnegative integer").get<std::size_t>();
    }
    return c;
}

HoldoutConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read holdout config " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("holdout config " + path.string() + ": " + e.what());
    }
    return config_from_json(j, std::filesystem::absolute(path).parent_path());
}

std::string digest(const json& document)
{
    const std::string text = document.dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace rulebench::holdout
