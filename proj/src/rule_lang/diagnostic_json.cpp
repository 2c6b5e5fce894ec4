// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/diagnostic_json.hpp"

namespace rulebench::lang {

nlohmann::json to_json(const Diagnostic& d)
{
    return nlohmann::json{{"severity", to_string(d.severity)},
                          {"line", d.line},
                          {"column", d.column},
                          {"message", d.message},
                          {"code", d.code}};
}

nlohmann::json to_json(const std::vector<Diagnostic>& diagnostics)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : diagnostics) {
        out.push_back(to_json(d));
    }
    return out;
}

Diagnostic diagnostic_from_json(const nlohmann::json& j)
{
    Diagnostic d;
    d.severity = j.at("severity").get<std::string>() == "warning" ? Severity::warning : Severity::error;
    j.at("line").get_to(d.line);
    j.at("column").get_to(d.column);
    j.at("message").get_to(d.message);
    j.at("code").get_to(d.code);
    return d;
}

}  // namespace rulebench::lang
