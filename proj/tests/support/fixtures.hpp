// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/corpus.hpp"
#include "rulebench/holdout/config.hpp"
#include "rulebench/rule_lang/ast.hpp"

#include <filesystem>
#include <string>

namespace rulebench::testing {

std::filesystem::path fixture(const std::string& relative);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Parses and validates; fails the calling test (via exception) otherwise.
lang::RuleAst must_parse(const std::string& text);

/// One inbound message with a sender, one recipient and passing auth.
corpus::Message basic_message(const std::string& id);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

/// fixtures/holdout/holdout.json with every generator command pointed at
/// the built mock generator.
holdout::HoldoutConfig fixture_holdout_config();

}  // namespace rulebench::testing
