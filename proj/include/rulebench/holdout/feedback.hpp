// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/eval/hunt.hpp"
#include "rulebench/metrics/brittleness.hpp"
#include "rulebench/rule_lang/diagnostic.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rulebench::holdout {

struct FeedbackOptions {
    std::size_t fp_exemplars = 5;
    // Convergence thresholds.
    std::size_t max_fp = 0;
    double max_brittleness = 50.0;
};

struct FeedbackInput {
    std::optional<std::vector<lang::Diagnostic>> validation;
    std::optional<eval::HuntResult> hunt;
    std::optional<bool> sample_hit;  // did the rule flag the sample message
    std::optional<metrics::BrittlenessReport> brittleness;
    std::optional<std::string> generator_error;
};

/// Schema-stable record sent back to the generator. Sections appear only
/// for inputs that are present. "converged" is true when validation passed
/// and the hunt shows tp > 0, fp <= max_fp, the sample hit, and
/// B <= max_brittleness.
nlohmann::json build_feedback(const FeedbackInput& input, const FeedbackOptions& options = {});

/// Shorthand for the common three-input form.
nlohmann::json build_feedback(const std::vector<lang::Diagnostic>& validation,
                              const std::optional<eval::HuntResult>& hunt,
                              const std::optional<metrics::BrittlenessReport>& brittleness,
                              const FeedbackOptions& options = {});

}  // namespace rulebench::holdout
