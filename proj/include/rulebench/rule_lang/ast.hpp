// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/rule_lang/diagnostic.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rulebench::lang {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BoolOpKind { And, Or, Not };

enum class CompareOp { Eq, Ne, IEq, In, IIn, Lt, Le, Gt, Ge };

enum class Quantifier { Any, All };

std::string_view to_string(BoolOpKind kind);
std::string_view to_string(CompareOp op);
std::string_view to_string(Quantifier quantifier);

/// `and` / `or` are n-ary over one parenthesis level; `not` has one operand.
struct BoolOp {
    BoolOpKind kind = BoolOpKind::And;
    std::vector<ExprPtr> operands;
};

struct Comparison {
    CompareOp op = CompareOp::Eq;
    ExprPtr lhs;
    ExprPtr rhs;
};

/// `any(collection, predicate)` / `all(collection, predicate)`. The
/// collection is evaluated in the enclosing scope, the predicate one scope
/// deeper.
struct IterPredicate {
    Quantifier quantifier = Quantifier::Any;
    ExprPtr collection;
    ExprPtr predicate;
};

struct FunctionCall {
    std::string name;  // namespaced, e.g. "strings.ilike"
    std::vector<ExprPtr> args;
};

enum class PathAnchor {
    Root,        // segments[0] names a message field root
    Current,     // `.`  current iteration element
    Parent,      // `..` enclosing iteration element
    Expression,  // member access on a call result, e.g. profile.by_sender().prevalence
};

struct FieldPath {
    PathAnchor anchor = PathAnchor::Root;
    ExprPtr base;  // set only for PathAnchor::Expression
    std::vector<std::string> segments;
};

struct Literal {
    std::variant<bool, std::int64_t, std::string, std::vector<std::string>> value;
};

struct Expr {
    std::variant<BoolOp, Comparison, IterPredicate, FunctionCall, FieldPath, Literal> node;
    SourcePos pos;
};

struct RuleAst {
    ExprPtr root;
};

/// Equality over node kinds, operators, names and literals; source
/// positions are ignored.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const RuleAst& a, const RuleAst& b);

// Construction helpers used by the parser and by tests.
ExprPtr make_bool(BoolOpKind kind, std::vector<ExprPtr> operands, SourcePos pos = {});
ExprPtr make_not(ExprPtr operand, SourcePos pos = {});
ExprPtr make_compare(CompareOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr make_iter(Quantifier quantifier, ExprPtr collection, ExprPtr predicate, SourcePos pos = {});
ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourcePos pos = {});
ExprPtr make_path(PathAnchor anchor, std::vector<std::string> segments, SourcePos pos = {});
ExprPtr make_member(ExprPtr base, std::vector<std::string> segments, SourcePos pos = {});
ExprPtr make_string(std::string value, SourcePos pos = {});
ExprPtr make_string_list(std::vector<std::string> values, SourcePos pos = {});
ExprPtr make_bool_literal(bool value, SourcePos pos = {});
ExprPtr make_int(std::int64_t value, SourcePos pos = {});

}  // namespace rulebench::lang
