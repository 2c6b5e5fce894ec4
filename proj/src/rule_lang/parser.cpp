// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/parser.hpp"

#include "rulebench/rule_lang/lexer.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <utility>

namespace rulebench::lang {
namespace {

struct SyntaxError {
    Diagnostic diagnostic;
};

std::optional<CompareOp> comparison_op(TokenKind kind)
{
    switch (kind) {
    case TokenKind::eq: return CompareOp::Eq;
    case TokenKind::ne: return CompareOp::Ne;
    case TokenKind::ieq: return CompareOp::IEq;
    case TokenKind::kw_in: return CompareOp::In;
    case TokenKind::kw_in_tilde: return CompareOp::IIn;
    case TokenKind::lt: return CompareOp::Lt;
    case TokenKind::le: return CompareOp::Le;
    case TokenKind::gt: return CompareOp::Gt;
    case TokenKind::ge: return CompareOp::Ge;
    default: return std::nullopt;
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ExprPtr parse_rule()
    {
        ExprPtr root = parse_or();
        if (peek().kind != TokenKind::end) {
            fail("unexpected " + describe(peek()) + " after complete expression");
        }
        return root;
    }

private:
    class DepthGuard {
    public:
        explicit DepthGuard(Parser& parser) : parser_(parser)
        {
            if (++parser_.depth_ > max_nesting_depth) {
                parser_.fail("expression nests deeper than " + std::to_string(max_nesting_depth) + " levels",
                             codes::nesting_too_deep);
            }
        }
        ~DepthGuard() { --parser_.depth_; }
        DepthGuard(const DepthGuard&) = delete;
        DepthGuard& operator=(const DepthGuard&) = delete;

    private:
        Parser& parser_;
    };

    [[nodiscard]] const Token& peek(std::size_t ahead = 0) const
    {
        const std::size_t index = std::min(cursor_ + ahead, tokens_.size() - 1);
        return tokens_[index];
    }

    const Token& advance()
    {
        const Token& token = tokens_[cursor_];
        if (cursor_ + 1 < tokens_.size()) {
            ++cursor_;
        }
        return token;
    }

    bool accept(TokenKind kind)
    {
        if (peek().kind == kind) {
            advance();
            return true;
        }
        return false;
    }

    const Token& expect(TokenKind kind, std::string_view context)
    {
        if (peek().kind != kind) {
            fail("expected " + std::string(to_string(kind)) + " " + std::string(context) + ", found " +
                 describe(peek()));
        }
        return advance();
    }

    static std::string describe(const Token& token)
    {
        switch (token.kind) {
        case TokenKind::identifier: return "identifier '" + token.text + "'";
        case TokenKind::string_literal: return "string literal";
        case TokenKind::integer_literal: return "integer " + token.text;
        default: return std::string(to_string(token.kind));
        }
    }

    // End-of-input errors point at the last real token so the position
    // stays inside the source text.
    [[nodiscard]] SourcePos error_pos() const
    {
        if (peek().kind == TokenKind::end && cursor_ > 0) {
            return tokens_[cursor_ - 1].pos;
        }
        return peek().pos;
    }

    [[noreturn]] void fail(std::string message, std::string_view code = codes::syntax_error) const
    {
        throw SyntaxError{make_error(error_pos(), code, std::move(message))};
    }

    ExprPtr parse_or()
    {
        const SourcePos pos = peek().pos;
        std::vector<ExprPtr> operands{parse_and()};
        while (accept(TokenKind::kw_or)) {
            operands.push_back(parse_and());
        }
        return operands.size() == 1 ? operands.front() : make_bool(BoolOpKind::Or, std::move(operands), pos);
    }

    ExprPtr parse_and()
    {
        const SourcePos pos = peek().pos;
        std::vector<ExprPtr> operands{parse_comparison()};
        while (accept(TokenKind::kw_and)) {
            operands.push_back(parse_comparison());
        }
        return operands.size() == 1 ? operands.front() : make_bool(BoolOpKind::And, std::move(operands), pos);
    }

    ExprPtr parse_comparison()
    {
        const SourcePos pos = peek().pos;
        ExprPtr lhs = parse_unary();
        const auto op = comparison_op(peek().kind);
        if (!op) {
            return lhs;
        }
        advance();
        ExprPtr rhs;
        if ((*op == CompareOp::In || *op == CompareOp::IIn) && peek().kind == TokenKind::lparen) {
            rhs = parse_list_literal();
        } else {
            rhs = parse_unary();
        }
        if (comparison_op(peek().kind)) {
            fail("comparisons cannot be chained; add parentheses");
        }
        return make_compare(*op, std::move(lhs), std::move(rhs), pos);
    }

    ExprPtr parse_list_literal()
    {
        const SourcePos pos = expect(TokenKind::lparen, "to open list").pos;
        std::vector<std::string> values;
        do {
            if (peek().kind != TokenKind::string_literal) {
                fail("list elements must be string literals, found " + describe(peek()));
            }
            values.push_back(advance().text);
        } while (accept(TokenKind::comma));
        expect(TokenKind::rparen, "to close list");
        return make_string_list(std::move(values), pos);
    }

    ExprPtr parse_unary()
    {
        DepthGuard guard(*this);
        if (peek().kind == TokenKind::kw_not) {
            const SourcePos pos = advance().pos;
            return make_not(parse_unary(), pos);
        }
        return parse_primary();
    }

    std::vector<std::string> parse_segments()
    {
        std::vector<std::string> segments;
        while (peek().kind == TokenKind::dot) {
            advance();
            if (peek().kind != TokenKind::identifier) {
                fail("expected field name after '.', found " + describe(peek()));
            }
            segments.push_back(advance().text);
        }
        return segments;
    }

    ExprPtr parse_primary()
    {
        const Token& token = peek();
        const SourcePos pos = token.pos;
        switch (token.kind) {
        case TokenKind::string_literal:
            return make_string(advance().text, pos);
        case TokenKind::integer_literal: {
            const std::string& digits = advance().text;
            std::int64_t value = 0;
            const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc{} || end != digits.data() + digits.size()) {
                throw SyntaxError{make_error(pos, codes::syntax_error, "integer literal out of range")};
            }
            return make_int(value, pos);
        }
        case TokenKind::kw_true:
            advance();
            return make_bool_literal(true, pos);
        case TokenKind::kw_false:
            advance();
            return make_bool_literal(false, pos);
        case TokenKind::lparen: {
            advance();
            ExprPtr inner = parse_or();
            expect(TokenKind::rparen, "to close parenthesis");
            return inner;
        }
        case TokenKind::kw_any:
        case TokenKind::kw_all: {
            const Quantifier quantifier = token.kind == TokenKind::kw_any ? Quantifier::Any : Quantifier::All;
            advance();
            expect(TokenKind::lparen, "after iterator keyword");
            ExprPtr collection = parse_or();
            expect(TokenKind::comma, "between iterator collection and predicate");
            ExprPtr predicate = parse_or();
            expect(TokenKind::rparen, "to close iterator");
            return make_iter(quantifier, std::move(collection), std::move(predicate), pos);
        }
        case TokenKind::dot: {
            advance();
            std::vector<std::string> segments;
            if (peek().kind == TokenKind::identifier) {
                segments.push_back(advance().text);
                auto rest = parse_segments();
                segments.insert(segments.end(), rest.begin(), rest.end());
            }
            return make_path(PathAnchor::Current, std::move(segments), pos);
        }
        case TokenKind::dot_dot: {
            advance();
            std::vector<std::string> segments;
            if (peek().kind == TokenKind::identifier) {
                segments.push_back(advance().text);
                auto rest = parse_segments();
                segments.insert(segments.end(), rest.begin(), rest.end());
            }
            return make_path(PathAnchor::Parent, std::move(segments), pos);
        }
        case TokenKind::identifier: {
            std::vector<std::string> names{advance().text};
            auto rest = parse_segments();
            names.insert(names.end(), rest.begin(), rest.end());
            if (peek().kind != TokenKind::lparen) {
                return make_path(PathAnchor::Root, std::move(names), pos);
            }
            std::string name = names.front();
            for (std::size_t i = 1; i < names.size(); ++i) {
                name += '.' + names[i];
            }
            ExprPtr call = parse_call(std::move(name), pos);
            auto members = parse_segments();
            if (members.empty()) {
                return call;
            }
            return make_member(std::move(call), std::move(members), pos);
        }
        default:
            fail("expected expression, found " + describe(token));
        }
    }

    ExprPtr parse_call(std::string name, SourcePos pos)
    {
        expect(TokenKind::lparen, "to open argument list");
        std::vector<ExprPtr> args;
        if (!accept(TokenKind::rparen)) {
            do {
                args.push_back(parse_or());
            } while (accept(TokenKind::comma));
            expect(TokenKind::rparen, "to close argument list");
        }
        return make_call(std::move(name), std::move(args), pos);
    }

    std::vector<Token> tokens_;
    std::size_t cursor_ = 0;
    int depth_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text)
{
    ParseResult result;
    TokenizeResult lexed = tokenize(text);
    if (!lexed.ok()) {
        result.diagnostics = std::move(lexed.diagnostics);
        return result;
    }
    std::vector<Token> tokens;
    tokens.reserve(lexed.tokens.size());
    for (auto& token : lexed.tokens) {
        if (token.kind == TokenKind::comment) {
            ++result.comment_count;
        } else {
            tokens.push_back(std::move(token));
        }
    }
    if (tokens.size() == 1) {
        result.diagnostics.push_back(make_error({1, 1}, codes::empty_input, "rule text is empty"));
        return result;
    }
    try {
        Parser parser(std::move(tokens));
        result.ast = RuleAst{parser.parse_rule()};
    } catch (const SyntaxError& error) {
        result.diagnostics.push_back(error.diagnostic);
    }
    return result;
}

}  // namespace rulebench::lang
