// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rulebench::lang {

/// 1-based line and byte column inside a rule text.
struct SourcePos {
    int line = 1;
    int column = 1;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class Severity { error, warning };

std::string_view to_string(Severity severity);

struct Diagnostic {
    Severity severity = Severity::error;
    int line = 1;
    int column = 1;
    std::string message;
    std::string code;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Stable machine identifiers carried in Diagnostic::code.
namespace codes {
inline constexpr std::string_view empty_input = "empty-input";
inline constexpr std::string_view unterminated_string = "unterminated-string";
inline constexpr std::string_view illegal_character = "illegal-character";
inline constexpr std::string_view syntax_error = "syntax-error";
inline constexpr std::string_view nesting_too_deep = "nesting-too-deep";
inline constexpr std::string_view unknown_function = "unknown-function";
inline constexpr std::string_view arity_mismatch = "arity-mismatch";
inline constexpr std::string_view scope_error = "scope-error";
inline constexpr std::string_view unknown_field = "unknown-field";
inline constexpr std::string_view invalid_regex = "invalid-regex";
inline constexpr std::string_view regex_backreference = "regex-backreference";
}  // namespace codes

Diagnostic make_error(SourcePos pos, std::string_view code, std::string message);
Diagnostic make_warning(SourcePos pos, std::string_view code, std::string message);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Renders `file:line:column: severity: message [code]`.
std::string format_diagnostic(const Diagnostic& diagnostic, std::string_view file);

}  // namespace rulebench::lang
