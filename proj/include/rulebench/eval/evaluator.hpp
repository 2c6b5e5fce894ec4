// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/message.hpp"
#include "rulebench/rule_lang/ast.hpp"
#include "rulebench/rule_lang/regex_dialect.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <unordered_map>

namespace rulebench::eval {

/// Counters surfaced as hunt warnings. None of these abort evaluation.
struct EvalStats {
    std::uint64_t type_mismatches = 0;
    std::uint64_t regex_budget_exceeded = 0;
    std::uint64_t invalid_patterns = 0;

    EvalStats& operator+=(const EvalStats& other)
    {
        type_mismatches += other.type_mismatches;
        regex_budget_exceeded += other.regex_budget_exceeded;
        invalid_patterns += other.invalid_patterns;
        return *this;
    }

    [[nodiscard]] bool empty() const
    {
        return type_mismatches == 0 && regex_budget_exceeded == 0 && invalid_patterns == 0;
    }

    friend bool operator==(const EvalStats&, const EvalStats&) = default;
};

nlohmann::json to_json(const EvalStats& stats);

/// A rule with its literal regex patterns compiled once. Immutable and safe
/// to share across threads.
class CompiledRule {
public:
    explicit CompiledRule(lang::RuleAst ast);

    /// True iff the rule holds for the message. Null results at boolean
    /// positions count as false, so `not` is the exact complement.
    bool matches(const corpus::Message& message, EvalStats* stats = nullptr) const;

    [[nodiscard]] const lang::RuleAst& ast() const { return ast_; }

private:
    friend class Interpreter;

    lang::RuleAst ast_;
    // Keyed by the literal pattern node; a null pointer marks a pattern that
    // failed to compile.
    std::unordered_map<const lang::Expr*, lang::CompiledRegex> regexes_;
};

/// Convenience wrapper; compiles the rule on every call.
bool eval_rule(const lang::RuleAst& ast, const corpus::Message& message, EvalStats* stats = nullptr);

}  // namespace rulebench::eval
