// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace rulebench::holdout {

struct ProcessResult {
    bool started = false;     // false: exec failed, see `error`
    bool timed_out = false;   // killed after the deadline
    int exit_code = -1;       // -1 when killed by a signal or not started
    std::string stdout_text;
    std::string stderr_text;
    std::string error;
};

/// Runs argv[0] (PATH lookup when it has no slash) with `input` on stdin
/// and collects both output streams. The child is SIGKILLed at the deadline.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input,
                          std::chrono::milliseconds timeout);

}  // namespace rulebench::holdout
