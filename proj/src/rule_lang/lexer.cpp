// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/lexer.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <utility>

namespace rulebench::lang {
namespace {

bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_digit(char c)
{
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

constexpr std::array<std::pair<std::string_view, TokenKind>, 8> keywords{{
    {"and", TokenKind::kw_and},
    {"or", TokenKind::kw_or},
    {"not", TokenKind::kw_not},
    {"in", TokenKind::kw_in},
    {"any", TokenKind::kw_any},
    {"all", TokenKind::kw_all},
    {"true", TokenKind::kw_true},
    {"false", TokenKind::kw_false},
}};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    TokenizeResult run()
    {
        TokenizeResult result;
        while (!at_end()) {
            const char c = peek();
            if (c == '\n') {
                advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                advance();
                continue;
            }
            const SourcePos start = pos_;
            if (c == '/' && peek(1) == '/') {
                advance();
                advance();
                std::string body;
                while (!at_end() && peek() != '\n') {
                    body += advance();
                }
                result.tokens.push_back({TokenKind::comment, std::move(body), start});
                continue;
            }
            if (c == '"' || c == '\'') {
                auto literal = read_string(start);
                if (!literal) {
                    result.diagnostics.push_back(
                        make_error(start, codes::unterminated_string, "unterminated string literal"));
                    return result;
                }
                result.tokens.push_back({TokenKind::string_literal, std::move(*literal), start});
                continue;
            }
            if (is_ident_start(c)) {
                std::string word;
                while (!at_end() && is_ident_char(peek())) {
                    word += advance();
                }
                TokenKind kind = TokenKind::identifier;
                for (const auto& [spelling, keyword] : keywords) {
                    if (word == spelling) {
                        kind = keyword;
                    }
                }
                if (kind == TokenKind::kw_in && !at_end() && peek() == '~') {
                    advance();
                    kind = TokenKind::kw_in_tilde;
                    word = "in~";
                }
                result.tokens.push_back({kind, std::move(word), start});
                continue;
            }
            if (is_digit(c)) {
                std::string digits;
                while (!at_end() && is_digit(peek())) {
                    digits += advance();
                }
                if (!at_end() && is_ident_start(peek())) {
                    result.diagnostics.push_back(make_error(
                        pos_, codes::illegal_character,
                        std::string("illegal character '") + peek() + "' after number"));
                    return result;
                }
                result.tokens.push_back({TokenKind::integer_literal, std::move(digits), start});
                continue;
            }
            if (auto kind = punctuation()) {
                result.tokens.push_back({*kind, {}, start});
                continue;
            }
            std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                                    ? "byte 0x" + hex(static_cast<unsigned char>(c))
                                    : std::string("'") + c + "'";
            result.diagnostics.push_back(
                make_error(start, codes::illegal_character, "illegal character " + shown));
            return result;
        }
        result.tokens.push_back({TokenKind::end, {}, pos_});
        return result;
    }

private:
    [[nodiscard]] bool at_end() const { return offset_ >= text_.size(); }

    [[nodiscard]] char peek(std::size_t ahead = 0) const
    {
        return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
    }

    char advance()
    {
        const char c = text_[offset_++];
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        return c;
    }

    static std::string hex(unsigned char value)
    {
        constexpr std::string_view digits = "0123456789abcdef";
        return {digits[value >> 4U], digits[value & 0xfU]};
    }

    std::optional<std::string> read_string(SourcePos /*start*/)
    {
        const char quote = advance();
        std::string out;
        while (!at_end()) {
            const char c = advance();
            if (c == quote) {
                return out;
            }
            if (c == '\\') {
                if (at_end()) {
                    return std::nullopt;
                }
                const char next = advance();
                if (next == '\\' || next == '"' || next == '\'') {
                    out += next;
                } else {
                    out += '\\';
                    out += next;
                }
                continue;
            }
            out += c;
        }
        return std::nullopt;
    }

    std::optional<TokenKind> punctuation()
    {
        const char c = peek();
        const char n = peek(1);
        auto take = [this](int count, TokenKind kind) {
            for (int i = 0; i < count; ++i) {
                advance();
            }
            return kind;
        };
        switch (c) {
        case '.':
            return n == '.' ? take(2, TokenKind::dot_dot) : take(1, TokenKind::dot);
        case '(':
            return take(1, TokenKind::lparen);
        case ')':
            return take(1, TokenKind::rparen);
        case ',':
            return take(1, TokenKind::comma);
        case '=':
            if (n == '=') {
                return take(2, TokenKind::eq);
            }
            if (n == '~') {
                return take(2, TokenKind::ieq);
            }
            return std::nullopt;
        case '!':
            return n == '=' ? std::optional(take(2, TokenKind::ne)) : std::nullopt;
        case '<':
            return n == '=' ? take(2, TokenKind::le) : take(1, TokenKind::lt);
        case '>':
            return n == '=' ? take(2, TokenKind::ge) : take(1, TokenKind::gt);
        default:
            return std::nullopt;
        }
    }

    std::string_view text_;
    std::size_t offset_ = 0;
    SourcePos pos_;
};

}  // namespace

std::string_view to_string(TokenKind kind)
{
    switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::string_literal: return "string literal";
    case TokenKind::integer_literal: return "integer literal";
    case TokenKind::dot: return "'.'";
    case TokenKind::dot_dot: return "'..'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::comma: return "','";
    case TokenKind::eq: return "'=='";
    case TokenKind::ne: return "'!='";
    case TokenKind::ieq: return "'=~'";
    case TokenKind::lt: return "'<'";
    case TokenKind::le: return "'<='";
    case TokenKind::gt: return "'>'";
    case TokenKind::ge: return "'>='";
    case TokenKind::kw_and: return "'and'";
    case TokenKind::kw_or: return "'or'";
    case TokenKind::kw_not: return "'not'";
    case TokenKind::kw_in: return "'in'";
    case TokenKind::kw_in_tilde: return "'in~'";
    case TokenKind::kw_any: return "'any'";
    case TokenKind::kw_all: return "'all'";
    case TokenKind::kw_true: return "'true'";
    case TokenKind::kw_false: return "'false'";
    case TokenKind::comment: return "comment";
    case TokenKind::end: return "end of input";
    }
    return "token";
}

TokenizeResult tokenize(std::string_view text)
{
    return Lexer(text).run();
}

}  // namespace rulebench::lang
