// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/rule_lang/ast.hpp"

#include <string>

namespace rulebench::lang {

/// Canonical single-line rendering. parse(unparse(ast)) is structurally
/// equal to ast; comments are dropped.
std::string unparse(const RuleAst& ast);
std::string unparse(const Expr& expr);

/// Double-quoted literal with `\\` and `\"` escaped.
std::string quote_string(const std::string& value);

}  // namespace rulebench::lang
