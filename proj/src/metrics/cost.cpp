// SPDX-License-Identifier: Apache-2.0

#include "rulebench/metrics/cost.hpp"

#include "rulebench/metrics/detection.hpp"

#include <algorithm>
#include <cmath>

namespace rulebench::metrics {

void AttemptLedger::record(double cost_dollars, bool passed_validation)
{
    if (!std::isfinite(cost_dollars) || cost_dollars < 0.0) {
        throw MetricsError("attempt cost must be a finite nonnegative number");
    }
    attempts_.push_back(Attempt{attempts_.size() + 1, cost_dollars, passed_validation});
}

AttemptLedger AttemptLedger::from(std::span<const std::pair<double, bool>> attempts)
{
    AttemptLedger ledger;
    for (const auto& [cost, passed] : attempts) {
        ledger.record(cost, passed);
    }
    return ledger;
}

std::optional<std::size_t> AttemptLedger::k_pass() const
{
    for (const auto& a : attempts_) {
        if (a.passed_validation) {
            return a.index;
        }
    }
    return std::nullopt;
}

CostToPass cost_to_pass(double mean_attempt_cost, double pass1_rate)
{
    if (!(pass1_rate >= 0.0 && pass1_rate <= 1.0)) {
        throw MetricsError("pass@1 rate must lie in [0, 1]");
    }
    if (!(mean_attempt_cost >= 0.0)) {
        throw MetricsError("mean attempt cost must be nonnegative");
    }
    if (pass1_rate == 0.0) {
        return CostToPass{true, 0.0};
    }
    return CostToPass{false, mean_attempt_cost / pass1_rate};
}

double total_cost(const AttemptLedger& ledger)
{
    if (ledger.empty()) {
        throw MetricsError("total_cost of an empty ledger");
    }
    double sum = 0.0;
    for (const auto& a : ledger.attempts()) {
        sum += a.cost_dollars;
        if (a.passed_validation) {
            break;
        }
    }
    return sum;
}

std::vector<PassAtKPoint> pass_at_k_curve(std::span<const AttemptLedger> ledgers)
{
    if (ledgers.empty()) {
        throw MetricsError("pass_at_k_curve needs at least one ledger");
    }
    std::size_t longest = 0;
    for (const auto& l : ledgers) {
        longest = std::max(longest, l.size());
    }
    std::vector<PassAtKPoint> curve(longest);
    std::vector<double> cost_sum(longest, 0.0);
    for (const auto& l : ledgers) {
        if (const auto k = l.k_pass()) {
            ++curve[*k - 1].passed_at_k;
            cost_sum[*k - 1] += total_cost(l);
        }
    }
    std::size_t cumulative = 0;
    for (std::size_t i = 0; i < longest; ++i) {
        curve[i].k = i + 1;
        cumulative += curve[i].passed_at_k;
        curve[i].pass_fraction = static_cast<double>(cumulative) / static_cast<double>(ledgers.size());
        if (curve[i].passed_at_k > 0) {
            curve[i].mean_cost = cost_sum[i] / static_cast<double>(curve[i].passed_at_k);
        }
    }
    return curve;
}

nlohmann::json to_json(const AttemptLedger& ledger)
{
    nlohmann::json attempts = nlohmann::json::array();
    for (const auto& a : ledger.attempts()) {
        attempts.push_back({{"index", a.index}, {"cost_dollars", a.cost_dollars}, {"passed_validation", a.passed_validation}});
    }
    const auto k = ledger.k_pass();
    return nlohmann::json{{"attempts", std::move(attempts)},
                          {"k_pass", k ? nlohmann::json(*k) : nlohmann::json(nullptr)}};
}

AttemptLedger attempt_ledger_from_json(const nlohmann::json& j)
{
    AttemptLedger ledger;
    for (const auto& a : j.at("attempts")) {
        ledger.record(a.at("cost_dollars").get<double>(), a.at("passed_validation").get<bool>());
    }
    return ledger;
}

nlohmann::json to_json(const CostToPass& cost)
{
    if (cost.unbounded) {
        return nlohmann::json{{"unbounded", true}, {"dollars", nullptr}};
    }
    return nlohmann::json{{"unbounded", false}, {"dollars", cost.dollars}};
}

nlohmann::json to_json(const std::vector<PassAtKPoint>& curve)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : curve) {
        out.push_back({{"k", p.k},
                       {"pass_fraction", p.pass_fraction},
                       {"passed_at_k", p.passed_at_k},
                       {"mean_cost", p.mean_cost ? nlohmann::json(*p.mean_cost) : nlohmann::json(nullptr)}});
    }
    return out;
}

}  // namespace rulebench::metrics
