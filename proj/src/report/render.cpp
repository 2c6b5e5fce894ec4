// SPDX-License-Identifier: Apache-2.0

#include "rulebench/report/render.hpp"

#include "rulebench/holdout/harness.hpp"
#include "rulebench/metrics/detection.hpp"

#include <sstream>

namespace rulebench::report {
namespace {

using nlohmann::json;

const std::vector<std::string> detection_headers{"Name", "Hits", "TPs", "FPs", "Unique TPs", "Score", "Unlabeled"};
const std::vector<std::string> comparison_headers{"Rule Name", "Brittleness (Generated)", "Brittleness (Human)",
                                                  "Cost ($)", "pass@k"};

std::vector<std::string> cells(const DetectionRow& r)
{
    return {r.name,
            std::to_string(r.hits),
            std::to_string(r.tp),
            std::to_string(r.fp),
            std::to_string(r.unique_tp),
            metrics::format_score(r.tp, r.fp, r.unique_tp),
            std::to_string(r.unlabeled)};
}

std::vector<std::string> cells(const ComparisonRow& r)
{
    return {r.name,
            r.brittleness_generated ? metrics::format_fixed(*r.brittleness_generated, 1) : "n/a",
            metrics::format_fixed(r.brittleness_human, 1),
            metrics::format_fixed(r.cost_dollars, 2),
            r.k_pass ? std::to_string(*r.k_pass) : "n/a"};
}

std::string markdown_cell(const std::string& text)
{
    std::string out;
    for (const char c : text) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::string csv_cell(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string render(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows,
                   Format format)
{
    std::ostringstream out;
    if (format == Format::csv) {
        auto line = [&out](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i == 0 ? "" : ",") << csv_cell(row[i]);
            }
            out << "\n";
        };
        line(headers);
        for (const auto& row : rows) {
            line(row);
        }
        return out.str();
    }
    auto line = [&out](const std::vector<std::string>& row) {
        out << "|";
        for (const auto& cell : row) {
            out << " " << markdown_cell(cell) << " |";
        }
        out << "\n";
    };
    line(headers);
    out << "|";
    for (std::size_t i = 0; i < headers.size(); ++i) {
        out << (i == 0 ? " --- |" : " ---: |");
    }
    out << "\n";
    for (const auto& row : rows) {
        line(row);
    }
    return out.str();
}

template <typename Row>
std::vector<std::vector<std::string>> all_cells(const std::vector<Row>& rows)
{
    std::vector<std::vector<std::string>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(cells(r));
    }
    return out;
}

std::uint64_t count(const json& j, const char* key)
{
    return j.at(key).get<std::uint64_t>();
}

DetectionRow row_from_hunt_json(const json& hunt, const std::string& name)
{
    DetectionRow r;
    r.name = name;
    r.hits = count(hunt, "hits");
    r.tp = count(hunt, "tp");
    r.fp = count(hunt, "fp");
    r.unique_tp = count(hunt, "unique_tp");
    r.unlabeled = count(hunt, "unlabeled");
    return r;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name)
{
    if (name == "markdown") {
        return Format::markdown;
    }
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "structured") {
        return Format::structured;
    }
    return std::nullopt;
}

DetectionRow detection_row(const eval::HuntResult& hunt)
{
    return DetectionRow{hunt.rule_name, hunt.hits, hunt.tp, hunt.fp, hunt.unique_tp, hunt.unlabeled};
}

std::string render_detection_table(const std::vector<DetectionRow>& rows, Format format)
{
    if (format == Format::structured) {
        return detection_table_json(rows).dump(2) + "\n";
    }
    return render(detection_headers, all_cells(rows), format);
}

std::string render_comparison_table(const std::vector<ComparisonRow>& rows, Format format)
{
    if (format == Format::structured) {
        return comparison_table_json(rows).dump(2) + "\n";
    }
    return render(comparison_headers, all_cells(rows), format);
}

json detection_table_json(const std::vector<DetectionRow>& rows)
{
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"name", r.name},
                       {"hits", r.hits},
                       {"tp", r.tp},
                       {"fp", r.fp},
                       {"unique_tp", r.unique_tp},
                       {"unlabeled", r.unlabeled},
                       {"score", metrics::format_score(r.tp, r.fp, r.unique_tp)}});
    }
    return out;
}

json comparison_table_json(const std::vector<ComparisonRow>& rows)
{
    json out = json::array();
    for (const auto& r : rows) {
        const auto c = cells(r);
        out.push_back({{"name", r.name},
                       {"brittleness_generated", c[1]},
                       {"brittleness_human", c[2]},
                       {"cost_dollars", c[3]},
                       {"k_pass", r.k_pass ? json(*r.k_pass) : json(nullptr)}});
    }
    return out;
}

std::string render_report(const json& report, Format format)
{
    if (!report.is_object() || !report.contains("schema_version") || !report.at("schema_version").is_number_integer()) {
        throw ReportError("report has no schema_version");
    }
    const int version = report.at("schema_version").get<int>();
    if (version != holdout::report_schema_version) {
        throw ReportError("unsupported report schema_version " + std::to_string(version) + " (expected " +
                          std::to_string(holdout::report_schema_version) + ")");
    }
    std::vector<DetectionRow> human;
    std::vector<DetectionRow> generated;
    std::vector<ComparisonRow> comparison;
    try {
        for (const auto& row : report.at("rows")) {
            const std::string name = row.at("rule_name").get<std::string>();
            const json& h = row.at("human");
            human.push_back(row_from_hunt_json(h.at("hunt"), name));
            ComparisonRow c;
            c.name = name;
            c.brittleness_human = h.at("brittleness").at("B").get<double>();
            c.cost_dollars = row.at("total_cost").get<double>();
            if (!row.at("k_pass").is_null()) {
                c.k_pass = row.at("k_pass").get<std::size_t>();
            }
            const json& g = row.at("generated");
            if (!g.is_null()) {
                generated.push_back(row_from_hunt_json(g.at("hunt"), name));
                c.brittleness_generated = g.at("brittleness").at("B").get<double>();
            }
            comparison.push_back(std::move(c));
        }
    } catch (const json::exception& e) {
        throw ReportError(std::string("malformed report: ") + e.what());
    }

    if (format == Format::structured) {
        return json{{"human_rules", detection_table_json(human)},
                    {"generated_rules", detection_table_json(generated)},
                    {"comparison", comparison_table_json(comparison)}}
                   .dump(2) +
               "\n";
    }
    std::ostringstream out;
    if (format == Format::markdown) {
        out << "### Human rules\n\n"
            << render_detection_table(human, format) << "\n### Generated rules\n\n"
            << render_detection_table(generated, format) << "\n### Brittleness and cost\n\n"
            << render_comparison_table(comparison, format);
    } else {
        out << render_detection_table(human, format) << "\n"
            << render_detection_table(generated, format) << "\n"
            << render_comparison_table(comparison, format);
    }
    return out.str();
}

}  // namespace rulebench::report
