// SPDX-License-Identifier: Apache-2.0

#include "rulebench/metrics/detection.hpp"

#include <cmath>
#include <cstdio>

namespace rulebench::metrics {

DetectionScore detection_score(std::uint64_t tp, std::uint64_t fp, std::uint64_t unique_tp)
{
    if (unique_tp > tp) {
        throw MetricsError("unique_tp (" + std::to_string(unique_tp) + ") exceeds tp (" + std::to_string(tp) + ")");
    }
    DetectionScore s;
    s.tp = tp;
    s.fp = fp;
    s.unique_tp = unique_tp;
    const std::uint64_t hits = tp + fp;
    if (hits == 0) {
        return s;
    }
    s.defined = true;
    s.precision = static_cast<double>(tp) / static_cast<double>(hits);
    s.unique_precision = static_cast<double>(unique_tp) / static_cast<double>(hits);
    s.score = 0.5 * (s.precision + s.unique_precision);
    return s;
}

std::string format_score(std::uint64_t tp, std::uint64_t fp, std::uint64_t unique_tp)
{
    if (unique_tp > tp) {
        throw MetricsError("unique_tp exceeds tp");
    }
    const std::uint64_t den = 2 * (tp + fp);
    if (den == 0) {
        return "n/a";
    }
    // Round on integers: 0.8125 must become 0.813, which binary doubles
    // cannot promise.
    const std::uint64_t milli = (1000 * (tp + unique_tp) + den / 2) / den;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%llu.%03llu", static_cast<unsigned long long>(milli / 1000),
                  static_cast<unsigned long long>(milli % 1000));
    return buffer;
}

std::string format_score(const DetectionScore& score)
{
    return format_score(score.tp, score.fp, score.unique_tp);
}

std::string format_fixed(double value, int decimals)
{
    if (!std::isfinite(value)) {
        return value > 0 ? "inf" : "n/a";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    std::string out(buffer);
    if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') {
        out.erase(0, 1);  // no "-0.0"
    }
    return out;
}

}  // namespace rulebench::metrics
