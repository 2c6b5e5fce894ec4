// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/diagnostic.hpp"

#include <algorithm>

namespace rulebench::lang {

std::string_view to_string(Severity severity)
{
    return severity == Severity::error ? "error" : "warning";
}

Diagnostic make_error(SourcePos pos, std::string_view code, std::string message)
{
    return Diagnostic{Severity::error, pos.line, pos.column, std::move(message), std::string(code)};
}

Diagnostic make_warning(SourcePos pos, std::string_view code, std::string message)
{
    return Diagnostic{Severity::warning, pos.line, pos.column, std::move(message), std::string(code)};
}

bool has_errors(const std::vector<Diagnostic>& diagnostics)
{
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& diagnostic, std::string_view file)
{
    std::string out;
    out.append(file);
    out += ':' + std::to_string(diagnostic.line) + ':' + std::to_string(diagnostic.column) + ": ";
    out.append(to_string(diagnostic.severity));
    out += ": " + diagnostic.message + " [" + diagnostic.code + "]";
    return out;
}

}  // namespace rulebench::lang
