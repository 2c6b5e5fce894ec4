// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/rule_lang/ast.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rulebench::metrics {

enum class FindingKind { robust, brittle };

std::string_view to_string(FindingKind kind);

/// Tags the analyzer can emit.
namespace tags {
// brittle: literal operands of ==, !=, =~, in, in~
inline constexpr std::string_view ioc_ip = "ioc-ip";
inline constexpr std::string_view ioc_domain = "ioc-domain";
inline constexpr std::string_view ioc_hash = "ioc-hash";
inline constexpr std::string_view ioc_url = "ioc-url";
inline constexpr std::string_view ioc_email = "ioc-email";
inline constexpr std::string_view exact_long_literal = "exact-long-literal";
// robust
inline constexpr std::string_view sender_prevalence = "sender-prevalence";
inline constexpr std::string_view sender_solicited = "sender-solicited";
inline constexpr std::string_view auth_summary = "auth-summary";
inline constexpr std::string_view nlu = "nlu";
inline constexpr std::string_view fuzzy_glob = "fuzzy-glob";
inline constexpr std::string_view fuzzy_regex = "fuzzy-regex";
inline constexpr std::string_view base64_scan = "base64-scan";
}  // namespace tags

/// Every tag with its kind, in a fixed order.
const std::vector<std::pair<std::string_view, FindingKind>>& known_tags();

struct Taxonomy {
    double default_weight = 1.0;
    std::map<std::string, double> weights;  // per-tag overrides
    double k = 2.0;
    double x0 = 1.0;
    // Ratio used when there are robust findings but no brittle ones.
    double ratio_cap = 10.0;
    std::size_t long_literal_min = 12;

    [[nodiscard]] double weight_of(std::string_view tag) const;
    /// Smallest weight any single brittle finding can carry.
    [[nodiscard]] double min_brittle_weight() const;
};

/// Throws MetricsError on unknown fields or tags, non-positive weights or k.
Taxonomy taxonomy_from_json(const nlohmann::json& document);
Taxonomy load_taxonomy(const std::filesystem::path& path);
nlohmann::json to_json(const Taxonomy& taxonomy);

struct PatternFinding {
    FindingKind kind = FindingKind::robust;
    std::string tag;
    double weight = 1.0;
    std::string ast_location;  // "line:col path", e.g. "12:7 and[1]/any.pred/call[1]"
    std::string explanation;
};

struct BrittlenessReport {
    double rewards_R = 0.0;
    double penalties_P = 0.0;
    double k = 2.0;
    double x0 = 1.0;
    double B = 50.0;
    double robustness = 0.5;
    std::vector<PatternFinding> findings;
};

/// Logistic map of R/P onto (0, 100). With P = 0: B = 50 if R = 0,
/// otherwise the ratio is max(ratio_cap, R / min_brittle_weight), which
/// keeps B monotone when a first brittle finding is added.
double brittleness_score(double R, double P, double k, double x0, double ratio_cap = 10.0,
                         double min_brittle_weight = 1.0);

std::vector<PatternFinding> find_patterns(const lang::RuleAst& ast, const Taxonomy& taxonomy);

/// Uses the taxonomy's k and x0.
BrittlenessReport analyze_brittleness(const lang::RuleAst& ast, const Taxonomy& taxonomy = {});
BrittlenessReport analyze_brittleness(const lang::RuleAst& ast, const Taxonomy& taxonomy, double k, double x0);

/// Literal shape recognizers, exposed for tests. At most one tag per literal.
std::optional<std::string_view> ioc_shape(std::string_view literal);

nlohmann::json to_json(const BrittlenessReport& report);
BrittlenessReport brittleness_report_from_json(const nlohmann::json& document);

}  // namespace rulebench::metrics
