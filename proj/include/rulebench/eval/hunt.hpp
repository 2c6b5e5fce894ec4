// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/corpus.hpp"
#include "rulebench/eval/evaluator.hpp"

#include <json.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rulebench::eval {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HitSet {
    std::string rule_name;
    std::vector<std::string> hit_ids;  // sorted, unique
    EvalStats warnings;

    friend bool operator==(const HitSet&, const HitSet&) = default;
};

struct HuntOptions {
    // 0 picks std::thread::hardware_concurrency().
    unsigned workers = 1;
};

/// Scans every message. The result does not depend on the worker count.
HitSet hunt(const CompiledRule& rule, const corpus::Corpus& corpus, std::string rule_name,
            HuntOptions options = {});

struct HuntResult {
    std::string rule_name;
    std::size_t hits = 0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t unique_tp = 0;
    std::size_t unlabeled = 0;
    std::vector<std::string> tp_ids;
    std::vector<std::string> fp_ids;
    std::vector<std::string> unique_tp_ids;  // subset of tp_ids
    std::vector<std::string> unlabeled_ids;
    std::vector<std::string> baseline_rules;  // names the unique-TP count was computed against
    EvalStats warnings;

    friend bool operator==(const HuntResult&, const HuntResult&) = default;
};

/// Splits hits by label and counts TPs no baseline hit set contains.
/// Throws EvalError if a baseline hit set carries the rule's own name.
HuntResult classify(const HitSet& hits, const corpus::Corpus& corpus, std::span<const HitSet> baseline);

nlohmann::json to_json(const HuntResult& result);
HuntResult hunt_result_from_json(const nlohmann::json& document);

}  // namespace rulebench::eval
