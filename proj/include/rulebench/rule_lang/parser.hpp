// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/rule_lang/ast.hpp"
#include "rulebench/rule_lang/diagnostic.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace rulebench::lang {

struct ParseResult {
    std::optional<RuleAst> ast;
    std::vector<Diagnostic> diagnostics;
    std::size_t comment_count = 0;

    [[nodiscard]] bool ok() const { return ast.has_value(); }
};

/// Recursive-descent parser. Binding strength, tightest first:
/// `not`, comparisons, `and`, `or`. Comparisons do not chain.
/// Stops at the first syntax error.
ParseResult parse(std::string_view text);

/// Maximum parenthesis/call/iterator nesting accepted by parse().
inline constexpr int max_nesting_depth = 200;

}  // namespace rulebench::lang
