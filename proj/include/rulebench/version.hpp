// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace rulebench {

inline constexpr std::string_view tool_version = "0.1.0";

}  // namespace rulebench
