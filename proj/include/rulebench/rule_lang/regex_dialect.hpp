// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/regex.hpp>

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace rulebench::lang {

/// Perl-style syntax (Boost.Regex) minus backreferences. Matching is an
/// unanchored search; catastrophic backtracking is cut off by the engine's
/// state-count and stack limits, which surface as a budget warning.
using CompiledRegex = std::shared_ptr<const boost::regex>;

/// Either a compiled pattern or a human-readable reason it was rejected.
using RegexCompilation = std::variant<CompiledRegex, std::string>;

RegexCompilation compile_regex(std::string_view pattern, bool case_insensitive);

bool has_backreference(std::string_view pattern);

}  // namespace rulebench::lang
