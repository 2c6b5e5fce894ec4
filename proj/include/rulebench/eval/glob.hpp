// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace rulebench::eval {

/// Whole-string, ASCII case-insensitive match. `*` matches any run
/// (including empty), `?` exactly one character; there is no escape syntax.
bool glob_match(std::string_view text, std::string_view pattern);

bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);
std::string ascii_lower(std::string_view text);

}  // namespace rulebench::eval
