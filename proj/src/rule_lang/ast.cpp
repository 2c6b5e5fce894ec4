// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/ast.hpp"

#include <type_traits>

namespace rulebench::lang {

std::string_view to_string(BoolOpKind kind)
{
    switch (kind) {
    case BoolOpKind::And: return "and";
    case BoolOpKind::Or: return "or";
    case BoolOpKind::Not: return "not";
    }
    return "?";
}

std::string_view to_string(CompareOp op)
{
    switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::IEq: return "=~";
    case CompareOp::In: return "in";
    case CompareOp::IIn: return "in~";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    }
    return "?";
}

std::string_view to_string(Quantifier quantifier)
{
    return quantifier == Quantifier::Any ? "any" : "all";
}

namespace {

bool equal_ptr(const ExprPtr& a, const ExprPtr& b)
{
    if (!a || !b) {
        return !a && !b;
    }
    return structurally_equal(*a, *b);
}

bool equal_list(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!equal_ptr(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

ExprPtr wrap(auto node, SourcePos pos)
{
    return std::make_shared<const Expr>(Expr{std::move(node), pos});
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b)
{
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&b](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, BoolOp>) {
                return lhs.kind == rhs.kind && equal_list(lhs.operands, rhs.operands);
            } else if constexpr (std::is_same_v<T, Comparison>) {
                return lhs.op == rhs.op && equal_ptr(lhs.lhs, rhs.lhs) && equal_ptr(lhs.rhs, rhs.rhs);
            } else if constexpr (std::is_same_v<T, IterPredicate>) {
                return lhs.quantifier == rhs.quantifier && equal_ptr(lhs.collection, rhs.collection) &&
                       equal_ptr(lhs.predicate, rhs.predicate);
            } else if constexpr (std::is_same_v<T, FunctionCall>) {
                return lhs.name == rhs.name && equal_list(lhs.args, rhs.args);
            } else if constexpr (std::is_same_v<T, FieldPath>) {
                return lhs.anchor == rhs.anchor && lhs.segments == rhs.segments && equal_ptr(lhs.base, rhs.base);
            } else {
                return lhs.value == rhs.value;
            }
        },
        a.node);
}

bool structurally_equal(const RuleAst& a, const RuleAst& b)
{
    return equal_ptr(a.root, b.root);
}

ExprPtr make_bool(BoolOpKind kind, std::vector<ExprPtr> operands, SourcePos pos)
{
    return wrap(BoolOp{kind, std::move(operands)}, pos);
}

ExprPtr make_not(ExprPtr operand, SourcePos pos)
{
    return wrap(BoolOp{BoolOpKind::Not, {std::move(operand)}}, pos);
}

ExprPtr make_compare(CompareOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos)
{
    return wrap(Comparison{op, std::move(lhs), std::move(rhs)}, pos);
}

ExprPtr make_iter(Quantifier quantifier, ExprPtr collection, ExprPtr predicate, SourcePos pos)
{
    return wrap(IterPredicate{quantifier, std::move(collection), std::move(predicate)}, pos);
}

ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourcePos pos)
{
    return wrap(FunctionCall{std::move(name), std::move(args)}, pos);
}

ExprPtr make_path(PathAnchor anchor, std::vector<std::string> segments, SourcePos pos)
{
    return wrap(FieldPath{anchor, nullptr, std::move(segments)}, pos);
}

ExprPtr make_member(ExprPtr base, std::vector<std::string> segments, SourcePos pos)
{
    return wrap(FieldPath{PathAnchor::Expression, std::move(base), std::move(segments)}, pos);
}

ExprPtr make_string(std::string value, SourcePos pos)
{
    return wrap(Literal{std::move(value)}, pos);
}

ExprPtr make_string_list(std::vector<std::string> values, SourcePos pos)
{
    return wrap(Literal{std::move(values)}, pos);
}

ExprPtr make_bool_literal(bool value, SourcePos pos)
{
    return wrap(Literal{value}, pos);
}

ExprPtr make_int(std::int64_t value, SourcePos pos)
{
    return wrap(Literal{value}, pos);
}

}  // namespace rulebench::lang
