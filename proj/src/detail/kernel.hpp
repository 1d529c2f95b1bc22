// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdsa/units.hpp"

#include <cmath>
#include <cstddef>
#include <cstdlib>

namespace fdsa::detail {

/// Dirichlet kernel sin(order x)/(order sin x) evaluated after reducing x to the
/// principal interval [-pi/2, pi/2]; the reduced argument is written to `principal`.
inline double reduced_kernel(std::size_t order, double x, double& principal)
{
    const double k = std::nearbyint(x / kPi);
    principal = x - k * kPi;
    if (order == 1) {
        return 1.0;
    }
    const bool flip = (static_cast<long long>(std::abs(k)) % 2 == 1) && (order % 2 == 0);
    const double sign = flip ? -1.0 : 1.0;
    const double s = std::sin(principal);
    if (std::abs(s) < 1e-12) {
        return sign;
    }
    const double n = static_cast<double>(order);
    return sign * std::sin(n * principal) / (n * s);
}

} // namespace fdsa::detail
