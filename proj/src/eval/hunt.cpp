// SPDX-License-Identifier: Apache-2.0

#include "rulebench/eval/hunt.hpp"

#include <algorithm>
#include <thread>

namespace rulebench::eval {

HitSet hunt(const CompiledRule& rule, const corpus::Corpus& corpus, std::string rule_name, HuntOptions options)
{
    const auto messages = corpus.messages();
    unsigned workers = options.workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(messages.size(), 1)));

    std::vector<std::vector<std::size_t>> matched(workers);
    std::vector<EvalStats> stats(workers);
    auto scan = [&](unsigned worker) {
        const std::size_t begin = messages.size() * worker / workers;
        const std::size_t end = messages.size() * (worker + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) {
            if (rule.matches(messages[i], &stats[worker])) {
                matched[worker].push_back(i);
            }
        }
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(scan, w);
        }
    }

    HitSet out;
    out.rule_name = std::move(rule_name);
    for (unsigned w = 0; w < workers; ++w) {
        for (const std::size_t i : matched[w]) {
            out.hit_ids.push_back(messages[i].id);
        }
        out.warnings += stats[w];
    }
    std::sort(out.hit_ids.begin(), out.hit_ids.end());
    return out;
}

HuntResult classify(const HitSet& hits, const corpus::Corpus& corpus, std::span<const HitSet> baseline)
{
    for (const auto& other : baseline) {
        if (other.rule_name == hits.rule_name) {
            throw EvalError("baseline contains the rule under evaluation ('" + hits.rule_name + "')");
        }
    }
    HuntResult result;
    result.rule_name = hits.rule_name;
    result.warnings = hits.warnings;
    for (const auto& other : baseline) {
        result.baseline_rules.push_back(other.rule_name);
    }
    std::sort(result.baseline_rules.begin(), result.baseline_rules.end());

    for (const auto& id : hits.hit_ids) {
        switch (corpus.label_of(id)) {
        case corpus::LabelState::Malicious: {
            result.tp_ids.push_back(id);
            const bool seen = std::any_of(baseline.begin(), baseline.end(), [&id](const HitSet& other) {
                return std::binary_search(other.hit_ids.begin(), other.hit_ids.end(), id);
            });
            if (!seen) {
                result.unique_tp_ids.push_back(id);
            }
            break;
        }
        case corpus::LabelState::Benign: result.fp_ids.push_back(id); break;
        case corpus::LabelState::Unlabeled: result.unlabeled_ids.push_back(id); break;
        }
    }
    result.hits = hits.hit_ids.size();
    result.tp = result.tp_ids.size();
    result.fp = result.fp_ids.size();
    result.unique_tp = result.unique_tp_ids.size();
    result.unlabeled = result.unlabeled_ids.size();
    return result;
}

nlohmann::json to_json(const HuntResult& result)
{
    return nlohmann::json{
        {"rule_name", result.rule_name},
        {"hits", result.hits},
        {"tp", result.tp},
        {"fp", result.fp},
        {"unique_tp", result.unique_tp},
        {"unlabeled", result.unlabeled},
        {"tp_ids", result.tp_ids},
        {"fp_ids", result.fp_ids},
        {"unique_tp_ids", result.unique_tp_ids},
        {"unlabeled_ids", result.unlabeled_ids},
        {"baseline_rules", result.baseline_rules},
        {"warnings", to_json(result.warnings)},
    };
}

HuntResult hunt_result_from_json(const nlohmann::json& j)
{
    HuntResult r;
    j.at("rule_name").get_to(r.rule_name);
    j.at("hits").get_to(r.hits);
    j.at("tp").get_to(r.tp);
    j.at("fp").get_to(r.fp);
    j.at("unique_tp").get_to(r.unique_tp);
    j.at("unlabeled").get_to(r.unlabeled);
    j.at("tp_ids").get_to(r.tp_ids);
    j.at("fp_ids").get_to(r.fp_ids);
    j.at("unique_tp_ids").get_to(r.unique_tp_ids);
    j.at("unlabeled_ids").get_to(r.unlabeled_ids);
    j.at("baseline_rules").get_to(r.baseline_rules);
    const auto& w = j.at("warnings");
    w.at("type_mismatches").get_to(r.warnings.type_mismatches);
    w.at("regex_budget_exceeded").get_to(r.warnings.regex_budget_exceeded);
    w.at("invalid_patterns").get_to(r.warnings.invalid_patterns);
    return r;
}

}  // namespace rulebench::eval
