// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace rulebench {

/// Seeded generator with distribution helpers whose output depends only on
/// the engine's raw stream, so results are identical across standard
/// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound == 0) {
            throw std::invalid_argument("Rng::below: bound must be positive");
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t value = 0;
        do {
            value = engine_();
        } while (value >= limit);
        return value % bound;
    }

    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double unit() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    bool chance(double probability) { return unit() < probability; }

    template <typename Container>
    const auto& pick(const Container& items)
    {
        return items[below(items.size())];
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace rulebench
