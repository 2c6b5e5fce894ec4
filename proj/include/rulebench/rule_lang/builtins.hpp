// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace rulebench::lang {

/// How arguments from index 1 onward are interpreted.
enum class PatternKind { none, glob, regex };

enum class BuiltinId {
    strings_icontains,
    strings_contains,
    strings_ilike,
    regex_contains,
    regex_icontains,
    file_parse_text,
    file_parse_eml,
    beta_scan_base64,
    profile_by_sender,
    length,
};

struct Builtin {
    BuiltinId id;
    std::string_view name;
    std::size_t min_args;
    std::optional<std::size_t> max_args;  // nullopt: variadic
    PatternKind patterns;
};

/// The registry shared by the validator and the interpreter.
std::span<const Builtin> builtins();
const Builtin* find_builtin(std::string_view name);

/// Message field roots a top-level path may start with.
std::span<const std::string_view> known_field_roots();
bool is_known_field_root(std::string_view name);

}  // namespace rulebench::lang
