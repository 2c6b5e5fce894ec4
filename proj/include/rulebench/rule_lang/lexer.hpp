// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/rule_lang/diagnostic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rulebench::lang {

enum class TokenKind {
    identifier,
    string_literal,
    integer_literal,
    dot,
    dot_dot,
    lparen,
    rparen,
    comma,
    eq,         // ==
    ne,         // !=
    ieq,        // =~
    lt,
    le,
    gt,
    ge,
    kw_and,
    kw_or,
    kw_not,
    kw_in,
    kw_in_tilde,  // in~
    kw_any,
    kw_all,
    kw_true,
    kw_false,
    comment,
    end,
};

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::end;
    // Identifier spelling, decoded string contents, integer digits, or
    // comment body (text after `//`).
    std::string text;
    SourcePos pos;

    friend bool operator==(const Token&, const Token&) = default;
};

struct TokenizeResult {
    std::vector<Token> tokens;  // always terminated by TokenKind::end when ok()
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return diagnostics.empty(); }
};

/// Splits rule text into tokens. Comments are kept as TokenKind::comment
/// trivia. String escapes: `\\`, `\"` and `\'` decode to the escaped
/// character; every other backslash sequence is kept verbatim so regex
/// escapes such as `\s` survive untouched.
TokenizeResult tokenize(std::string_view text);

}  // namespace rulebench::lang
