// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/rule_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace rulebench::lang {
namespace {

std::string trim(std::string_view text)
{
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split_tags(std::string_view text)
{
    std::vector<std::string> tags;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start));
        if (!piece.empty()) {
            tags.push_back(piece);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return tags;
}

}  // namespace

RuleSource make_rule_source(std::string default_name, std::string text)
{
    RuleSource source{std::move(default_name), std::move(text), {}};
    std::istringstream lines(source.text);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        if (stripped.rfind("//", 0) != 0) {
            break;
        }
        const std::string body = trim(std::string_view(stripped).substr(2));
        if (body.rfind("name:", 0) == 0) {
            const std::string name = trim(std::string_view(body).substr(5));
            if (!name.empty()) {
                source.name = name;
            }
        } else if (body.rfind("tags:", 0) == 0) {
            source.tags = split_tags(std::string_view(body).substr(5));
        }
    }
    return source;
}

RuleSource load_rule_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw RuleFileError("cannot read rule file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    RuleSource source = make_rule_source(path.stem().string(), buffer.str());
    if (trim(source.text).empty()) {
        throw RuleFileError("rule file " + path.string() + " is empty");
    }
    if (source.name.empty()) {
        throw RuleFileError("rule file " + path.string() + " has an empty name");
    }
    return source;
}

std::vector<RuleSource> load_rule_set(const std::filesystem::path& directory)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(directory, ec)) {
        throw RuleFileError("rule directory " + directory.string() + " does not exist");
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".mql") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());
    std::vector<RuleSource> rules;
    std::set<std::string> names;
    for (const auto& path : paths) {
        RuleSource source = load_rule_file(path);
        if (!names.insert(source.name).second) {
            throw RuleFileError("duplicate rule name '" + source.name + "' in " + directory.string());
        }
        rules.push_back(std::move(source));
    }
    std::sort(rules.begin(), rules.end(), [](const RuleSource& a, const RuleSource& b) { return a.name < b.name; });
    return rules;
}

}  // namespace rulebench::lang
