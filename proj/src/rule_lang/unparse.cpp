// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/unparse.hpp"

#include <type_traits>

namespace rulebench::lang {
namespace {

// Binding levels; higher binds tighter.
constexpr int level_or = 1;
constexpr int level_and = 2;
constexpr int level_compare = 3;
constexpr int level_unary = 4;
constexpr int level_primary = 5;

int level_of(const Expr& expr)
{
    if (const auto* op = std::get_if<BoolOp>(&expr.node)) {
        switch (op->kind) {
        case BoolOpKind::Or: return level_or;
        case BoolOpKind::And: return level_and;
        case BoolOpKind::Not: return level_unary;
        }
    }
    if (std::holds_alternative<Comparison>(expr.node)) {
        return level_compare;
    }
    return level_primary;
}

std::string join(const std::vector<std::string>& segments)
{
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i > 0) {
            out += '.';
        }
        out += segments[i];
    }
    return out;
}

void render(const Expr& expr, std::string& out);

// Renders `expr` so that it re-parses at a position requiring binding
// level strictly greater than `floor`.
void render_above(const Expr& expr, int floor, std::string& out)
{
    if (level_of(expr) <= floor) {
        out += '(';
        render(expr, out);
        out += ')';
    } else {
        render(expr, out);
    }
}

void render_literal(const Literal& literal, std::string& out)
{
    std::visit(
        [&out](const auto& value) {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, bool>) {
                out += value ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                out += std::to_string(value);
            } else if constexpr (std::is_same_v<T, std::string>) {
                out += quote_string(value);
            } else {
                out += '(';
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i > 0) {
                        out += ", ";
                    }
                    out += quote_string(value[i]);
                }
                out += ')';
            }
        },
        literal.value);
}

void render(const Expr& expr, std::string& out)
{
    std::visit(
        [&out](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BoolOp>) {
                if (node.kind == BoolOpKind::Not) {
                    out += "not ";
                    render_above(*node.operands.front(), level_compare, out);
                    return;
                }
                const int self = node.kind == BoolOpKind::And ? level_and : level_or;
                const std::string_view sep = node.kind == BoolOpKind::And ? " and " : " or ";
                for (std::size_t i = 0; i < node.operands.size(); ++i) {
                    if (i > 0) {
                        out += sep;
                    }
                    render_above(*node.operands[i], self, out);
                }
            } else if constexpr (std::is_same_v<T, Comparison>) {
                render_above(*node.lhs, level_compare, out);
                out += ' ';
                out += to_string(node.op);
                out += ' ';
                render_above(*node.rhs, level_compare, out);
            } else if constexpr (std::is_same_v<T, IterPredicate>) {
                out += to_string(node.quantifier);
                out += '(';
                render(*node.collection, out);
                out += ", ";
                render(*node.predicate, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, FunctionCall>) {
                out += node.name;
                out += '(';
                for (std::size_t i = 0; i < node.args.size(); ++i) {
                    if (i > 0) {
                        out += ", ";
                    }
                    render(*node.args[i], out);
                }
                out += ')';
            } else if constexpr (std::is_same_v<T, FieldPath>) {
                switch (node.anchor) {
                case PathAnchor::Root:
                    out += join(node.segments);
                    break;
                case PathAnchor::Current:
                    out += '.';
                    out += join(node.segments);
                    break;
                case PathAnchor::Parent:
                    out += "..";
                    out += join(node.segments);
                    break;
                case PathAnchor::Expression:
                    render(*node.base, out);
                    out += '.';
                    out += join(node.segments);
                    break;
                }
            } else {
                render_literal(node, out);
            }
        },
        expr.node);
}

}  // namespace

std::string quote_string(const std::string& value)
{
    std::string out;
    out.reserve(value.size() + 2);
    out += '"';
    for (const char c : value) {
        if (c == '\\' || c == '"') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string unparse(const Expr& expr)
{
    std::string out;
    render(expr, out);
    return out;
}

std::string unparse(const RuleAst& ast)
{
    return ast.root ? unparse(*ast.root) : std::string();
}

}  // namespace rulebench::lang
