// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/builtins.hpp"

#include <algorithm>
#include <array>

namespace rulebench::lang {
namespace {

constexpr std::array<Builtin, 10> registry{{
    {BuiltinId::strings_icontains, "strings.icontains", 2, std::nullopt, PatternKind::none},
    {BuiltinId::strings_contains, "strings.contains", 2, std::nullopt, PatternKind::none},
    {BuiltinId::strings_ilike, "strings.ilike", 2, std::nullopt, PatternKind::glob},
    {BuiltinId::regex_contains, "regex.contains", 2, std::nullopt, PatternKind::regex},
    {BuiltinId::regex_icontains, "regex.icontains", 2, std::nullopt, PatternKind::regex},
    {BuiltinId::file_parse_text, "file.parse_text", 1, 1, PatternKind::none},
    {BuiltinId::file_parse_eml, "file.parse_eml", 1, 1, PatternKind::none},
    {BuiltinId::beta_scan_base64, "beta.scan_base64", 1, 1, PatternKind::none},
    {BuiltinId::profile_by_sender, "profile.by_sender", 0, 0, PatternKind::none},
    {BuiltinId::length, "length", 1, 1, PatternKind::none},
}};

constexpr std::array<std::string_view, 10> field_roots{
    "type", "sender", "recipients", "subject", "body", "attachments", "links", "headers", "profile", "nlu",
};

}  // namespace

std::span<const Builtin> builtins()
{
    return registry;
}

const Builtin* find_builtin(std::string_view name)
{
    const auto* it = std::find_if(registry.begin(), registry.end(),
                                  [name](const Builtin& b) { return b.name == name; });
    return it == registry.end() ? nullptr : &*it;
}

std::span<const std::string_view> known_field_roots()
{
    return field_roots;
}

bool is_known_field_root(std::string_view name)
{
    return std::find(field_roots.begin(), field_roots.end(), name) != field_roots.end();
}

}  // namespace rulebench::lang
