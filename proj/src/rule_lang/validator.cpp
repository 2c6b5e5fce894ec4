// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/validator.hpp"

#include "rulebench/rule_lang/builtins.hpp"
#include "rulebench/rule_lang/parser.hpp"
#include "rulebench/rule_lang/regex_dialect.hpp"

#include <type_traits>

namespace rulebench::lang {
namespace {

class Checker {
public:
    std::vector<Diagnostic> run(const RuleAst& ast)
    {
        if (ast.root) {
            visit(*ast.root, 0);
        }
        return std::move(diagnostics_);
    }

private:
    void visit(const Expr& expr, int depth)
    {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, BoolOp>) {
                    for (const auto& operand : node.operands) {
                        visit(*operand, depth);
                    }
                } else if constexpr (std::is_same_v<T, Comparison>) {
                    visit(*node.lhs, depth);
                    visit(*node.rhs, depth);
                } else if constexpr (std::is_same_v<T, IterPredicate>) {
                    visit(*node.collection, depth);
                    visit(*node.predicate, depth + 1);
                } else if constexpr (std::is_same_v<T, FunctionCall>) {
                    check_call(expr, node, depth);
                } else if constexpr (std::is_same_v<T, FieldPath>) {
                    check_path(expr, node, depth);
                }
            },
            expr.node);
    }

    void check_path(const Expr& expr, const FieldPath& path, int depth)
    {
        switch (path.anchor) {
        case PathAnchor::Root:
            if (path.segments.empty() || !is_known_field_root(path.segments.front())) {
                diagnostics_.push_back(make_error(
                    expr.pos, codes::unknown_field,
                    "unknown message field '" + (path.segments.empty() ? std::string() : path.segments.front()) +
                        "'"));
            }
            break;
        case PathAnchor::Current:
            if (depth < 1) {
                diagnostics_.push_back(
                    make_error(expr.pos, codes::scope_error, "'.' used outside of any()/all()"));
            }
            break;
        case PathAnchor::Parent:
            if (depth < 2) {
                diagnostics_.push_back(
                    make_error(expr.pos, codes::scope_error, "'..' requires two enclosing any()/all() scopes"));
            }
            break;
        case PathAnchor::Expression:
            if (path.base) {
                visit(*path.base, depth);
            }
            break;
        }
    }

    void check_call(const Expr& expr, const FunctionCall& call, int depth)
    {
        const Builtin* builtin = find_builtin(call.name);
        if (builtin == nullptr) {
            diagnostics_.push_back(
                make_error(expr.pos, codes::unknown_function, "unknown function '" + call.name + "'"));
        } else {
            const std::size_t n = call.args.size();
            if (n < builtin->min_args || (builtin->max_args && n > *builtin->max_args)) {
                std::string expected = std::to_string(builtin->min_args);
                if (!builtin->max_args) {
                    expected = "at least " + expected;
                } else if (*builtin->max_args != builtin->min_args) {
                    expected += " to " + std::to_string(*builtin->max_args);
                }
                diagnostics_.push_back(make_error(expr.pos, codes::arity_mismatch,
                                                  "'" + call.name + "' takes " + expected + " argument(s), got " +
                                                      std::to_string(n)));
            }
            if (builtin->patterns == PatternKind::regex) {
                for (std::size_t i = 1; i < n; ++i) {
                    check_regex_literal(*call.args[i]);
                }
            }
        }
        for (const auto& arg : call.args) {
            visit(*arg, depth);
        }
    }

    void check_regex_literal(const Expr& arg)
    {
        const auto* literal = std::get_if<Literal>(&arg.node);
        if (literal == nullptr) {
            return;
        }
        const auto* pattern = std::get_if<std::string>(&literal->value);
        if (pattern == nullptr) {
            return;
        }
        if (has_backreference(*pattern)) {
            diagnostics_.push_back(make_warning(arg.pos, codes::regex_backreference,
                                                "regex backreferences are not supported; pattern never matches"));
            return;
        }
        auto compiled = compile_regex(*pattern, false);
        if (const auto* reason = std::get_if<std::string>(&compiled)) {
            diagnostics_.push_back(
                make_warning(arg.pos, codes::invalid_regex, "invalid regex (never matches): " + *reason));
        }
    }

    std::vector<Diagnostic> diagnostics_;
};

}  // namespace

std::vector<Diagnostic> check_ast(const RuleAst& ast)
{
    return Checker{}.run(ast);
}

ValidationResult validate(std::string_view text)
{
    ValidationResult result;
    ParseResult parsed = parse(text);
    result.comment_count = parsed.comment_count;
    if (!parsed.ok()) {
        result.diagnostics = std::move(parsed.diagnostics);
        return result;
    }
    result.diagnostics = check_ast(*parsed.ast);
    result.ast = std::move(parsed.ast);
    result.ok = !has_errors(result.diagnostics);
    return result;
}

}  // namespace rulebench::lang
