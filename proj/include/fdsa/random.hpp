// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace fdsa {

/// Seeded generator whose draws are identical on every standard library:
/// only the raw mt19937_64 output is used, never a std distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, count); count > 0.
    std::size_t index(std::size_t count)
    {
        const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(count));
        return k < count ? k : count - 1;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fdsa
