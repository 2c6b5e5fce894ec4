// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/eval/hunt.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rulebench::report {

enum class Format { markdown, csv, structured };

std::optional<Format> parse_format(std::string_view name);

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One line of a detection table (human or generated rules).
struct DetectionRow {
    std::string name;
    std::uint64_t hits = 0;
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t unique_tp = 0;
    std::uint64_t unlabeled = 0;
};

/// One line of the brittleness/cost comparison.
struct ComparisonRow {
    std::string name;
    std::optional<double> brittleness_generated;
    double brittleness_human = 0.0;
    double cost_dollars = 0.0;
    std::optional<std::size_t> k_pass;
};

DetectionRow detection_row(const eval::HuntResult& hunt);

/// Markdown or CSV text. Scores use 3 decimals, brittleness 1, dollars 2;
/// undefined values render as "n/a".
std::string render_detection_table(const std::vector<DetectionRow>& rows, Format format);
std::string render_comparison_table(const std::vector<ComparisonRow>& rows, Format format);

/// Structured (JSON) form: rendered cells next to raw values.
nlohmann::json detection_table_json(const std::vector<DetectionRow>& rows);
nlohmann::json comparison_table_json(const std::vector<ComparisonRow>& rows);

/// Renders the three tables of a holdout report document. Throws
/// ReportError when schema_version is not supported or fields are missing.
std::string render_report(const nlohmann::json& report, Format format);

}  // namespace rulebench::report
