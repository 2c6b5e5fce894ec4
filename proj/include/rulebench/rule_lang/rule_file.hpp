// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rulebench::lang {

struct RuleSource {
    std::string name;
    std::string text;
    std::vector<std::string> tags;
};

class RuleFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds a RuleSource from text. `// name: ...` and `// tags: a, b` lines
/// in the leading comment block override the default name.
RuleSource make_rule_source(std::string default_name, std::string text);

/// Reads one `.mql` file; the name defaults to the file stem.
RuleSource load_rule_file(const std::filesystem::path& path);

/// Reads every `.mql` file in a directory, sorted by rule name. Names must
/// be unique and texts nonempty.
std::vector<RuleSource> load_rule_set(const std::filesystem::path& directory);

}  // namespace rulebench::lang
