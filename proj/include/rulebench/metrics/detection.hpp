// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rulebench::metrics {

class MetricsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct DetectionScore {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t unique_tp = 0;
    double precision = 0.0;
    double unique_precision = 0.0;
    double score = 0.0;
    bool defined = false;  // false when tp + fp == 0
};

/// Mean of precision and unique-TP precision. Throws MetricsError when
/// unique_tp > tp.
DetectionScore detection_score(std::uint64_t tp, std::uint64_t fp, std::uint64_t unique_tp);

/// Score with 3 decimals, rounded half-up on the exact rational value
/// (tp + unique_tp) / (2 (tp + fp)); "n/a" when undefined.
std::string format_score(std::uint64_t tp, std::uint64_t fp, std::uint64_t unique_tp);
std::string format_score(const DetectionScore& score);

/// Fixed-point rendering for brittleness (1 decimal) and dollars (2).
std::string format_fixed(double value, int decimals);

}  // namespace rulebench::metrics
