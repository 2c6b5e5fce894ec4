// SPDX-License-Identifier: Apache-2.0

#include "rulebench/holdout/feedback.hpp"

#include "rulebench/rule_lang/diagnostic_json.hpp"

#include <algorithm>

namespace rulebench::holdout {

nlohmann::json build_feedback(const FeedbackInput& input, const FeedbackOptions& options)
{
    nlohmann::json out = nlohmann::json::object();
    bool converged = true;

    if (input.generator_error) {
        out["generator_error"] = *input.generator_error;
        converged = false;
    }
    if (input.validation) {
        const bool ok = !lang::has_errors(*input.validation);
        out["validation"] = {{"ok", ok}, {"diagnostics", lang::to_json(*input.validation)}};
        converged = converged && ok;
    } else {
        converged = false;
    }
    if (input.hunt) {
        const auto& h = *input.hunt;
        const std::size_t shown = std::min(options.fp_exemplars, h.fp_ids.size());
        nlohmann::json hunt{{"hits", h.hits},
                            {"tp", h.tp},
                            {"fp", h.fp},
                            {"unique_tp", h.unique_tp},
                            {"unlabeled", h.unlabeled},
                            {"fp_exemplars", std::vector<std::string>(h.fp_ids.begin(), h.fp_ids.begin() + shown)}};
        if (input.sample_hit) {
            hunt["sample_hit"] = *input.sample_hit;
            converged = converged && *input.sample_hit;
        }
        out["hunt"] = std::move(hunt);
        converged = converged && h.tp > 0 && h.fp <= options.max_fp;
    } else {
        converged = false;
    }
    if (input.brittleness) {
        const auto& b = *input.brittleness;
        nlohmann::json findings = nlohmann::json::array();
        for (const auto& f : b.findings) {
            findings.push_back({{"kind", metrics::to_string(f.kind)},
                                {"tag", f.tag},
                                {"ast_location", f.ast_location},
                                {"explanation", f.explanation}});
        }
        out["brittleness"] = {{"B", b.B},
                              {"robustness", b.robustness},
                              {"rewards_R", b.rewards_R},
                              {"penalties_P", b.penalties_P},
                              {"findings", std::move(findings)}};
        converged = converged && b.B <= options.max_brittleness;
    }
    out["converged"] = converged;
    return out;
}

nlohmann::json build_feedback(const std::vector<lang::Diagnostic>& validation,
                              const std::optional<eval::HuntResult>& hunt,
                              const std::optional<metrics::BrittlenessReport>& brittleness,
                              const FeedbackOptions& options)
{
    FeedbackInput input;
    input.validation = validation;
    input.hunt = hunt;
    input.brittleness = brittleness;
    return build_feedback(input, options);
}

}  // namespace rulebench::holdout
