// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rulebench::metrics {

struct Attempt {
    std::size_t index = 0;  // 1-based
    double cost_dollars = 0.0;
    bool passed_validation = false;

    friend bool operator==(const Attempt&, const Attempt&) = default;
};

class AttemptLedger {
public:
    AttemptLedger() = default;

    /// Throws MetricsError for negative or non-finite costs.
    void record(double cost_dollars, bool passed_validation);

    /// Builds a ledger from per-attempt (cost, passed) pairs.
    static AttemptLedger from(std::span<const std::pair<double, bool>> attempts);

    [[nodiscard]] const std::vector<Attempt>& attempts() const { return attempts_; }
    [[nodiscard]] bool empty() const { return attempts_.empty(); }
    [[nodiscard]] std::size_t size() const { return attempts_.size(); }

    /// Index of the first passing attempt.
    [[nodiscard]] std::optional<std::size_t> k_pass() const;

    friend bool operator==(const AttemptLedger&, const AttemptLedger&) = default;

private:
    std::vector<Attempt> attempts_;
};

struct CostToPass {
    bool unbounded = false;
    double dollars = 0.0;
};

/// Mean per-attempt cost divided by the pass@1 rate. A zero rate is
/// reported as unbounded; rates outside [0, 1] throw MetricsError.
CostToPass cost_to_pass(double mean_attempt_cost, double pass1_rate);

/// Sum of costs through the first passing attempt, or of every attempt when
/// none passed. Throws MetricsError on an empty ledger.
double total_cost(const AttemptLedger& ledger);

struct PassAtKPoint {
    std::size_t k = 0;
    double pass_fraction = 0.0;  // ledgers with k_pass <= k, over all ledgers
    std::size_t passed_at_k = 0;  // ledgers with k_pass == k
    std::optional<double> mean_cost;  // mean total_cost over those ledgers
};

/// One point per k from 1 to the longest ledger. Throws MetricsError when
/// `ledgers` is empty.
std::vector<PassAtKPoint> pass_at_k_curve(std::span<const AttemptLedger> ledgers);

nlohmann::json to_json(const AttemptLedger& ledger);
AttemptLedger attempt_ledger_from_json(const nlohmann::json& document);
nlohmann::json to_json(const CostToPass& cost);
nlohmann::json to_json(const std::vector<PassAtKPoint>& curve);

}  // namespace rulebench::metrics
