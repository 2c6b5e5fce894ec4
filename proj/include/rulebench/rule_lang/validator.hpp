// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/rule_lang/ast.hpp"
#include "rulebench/rule_lang/diagnostic.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace rulebench::lang {

struct ValidationResult {
    bool ok = false;
    std::vector<Diagnostic> diagnostics;
    std::optional<RuleAst> ast;  // present whenever parsing succeeded
    std::size_t comment_count = 0;
};

/// Parses and statically checks a rule. `ok` is true iff the text parses,
/// every call resolves by name and arity, `.`/`..` only appear inside one
/// or two iterators, and every top-level path starts at a known field root.
/// Malformed literal regex patterns are reported as warnings; they evaluate
/// to false at hunt time. Never throws.
ValidationResult validate(std::string_view text);

/// Static checks over an already-parsed AST (same rules as validate()).
std::vector<Diagnostic> check_ast(const RuleAst& ast);

}  // namespace rulebench::lang
