// SPDX-License-Identifier: Apache-2.0

#include "rulebench/rule_lang/regex_dialect.hpp"

#include <cctype>

namespace rulebench::lang {

bool has_backreference(std::string_view pattern)
{
    for (std::size_t i = 0; i + 1 < pattern.size(); ++i) {
        if (pattern[i] != '\\') {
            continue;
        }
        const char next = pattern[i + 1];
        if ((next >= '1' && next <= '9') || next == 'g' || next == 'k') {
            return true;
        }
        ++i;  // skip the escaped character
    }
    return false;
}

RegexCompilation compile_regex(std::string_view pattern, bool case_insensitive)
{
    if (has_backreference(pattern)) {
        return std::string("backreferences are not supported");
    }
    boost::regex::flag_type flags = boost::regex::perl;
    if (case_insensitive) {
        flags |= boost::regex::icase;
    }
    try {
        return std::make_shared<const boost::regex>(pattern.begin(), pattern.end(), flags);
    } catch (const boost::regex_error& error) {
        return std::string(error.what());
    }
}

}  // namespace rulebench::lang
