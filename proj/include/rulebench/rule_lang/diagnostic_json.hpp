// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/rule_lang/diagnostic.hpp"

#include <json.hpp>

#include <vector>

namespace rulebench::lang {

nlohmann::json to_json(const Diagnostic& diagnostic);
nlohmann::json to_json(const std::vector<Diagnostic>& diagnostics);
Diagnostic diagnostic_from_json(const nlohmann::json& document);

}  // namespace rulebench::lang
