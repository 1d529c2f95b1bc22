// SPDX-License-Identifier: Apache-2.0
//
// Seeker optimization over FOI vectors, minimizing the highest FRB sidelobe
// when the eavesdropper location is unknown.
#pragma once

#include "fdsa/array_model.hpp"
#include "fdsa/beam_geometry.hpp"
#include "fdsa/random.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fdsa {

struct SoaConfig {
    std::size_t population = 40;
    std::size_t iterations = 100;
    double u_max = 0.95;
    double u_min = 0.0111;
    std::uint64_t seed = 1;
    double bound_hz = 0.0;

    /// Throws DomainError unless S >= 2, T >= 1, 0 < u_min < u_max < 1, bound >= 0.
    void validate() const;
};

/// 0.9 - 0.8 t / T for 1 <= t <= T.
double inertia_weight(std::size_t t, std::size_t iterations);

/// Membership degree of the seeker ranked I_s (I_s = S is the best).
double membership_degree(std::size_t rank, std::size_t population, double u_max = 0.95,
                         double u_min = 0.0111);

/// sgn(r1 d_ego + r2 d_alt + W d_pro) per coordinate, with d_pro the scalar
/// sgn(current_fitness - personal_fitness) applied to every coordinate.
std::vector<double> eg_direction(std::span<const double> position,
                                 std::span<const double> personal_best,
                                 std::span<const double> global_best, double current_fitness,
                                 double personal_fitness, double inertia, double r1, double r2);
/// Draws r1 then r2 from `rng`.
std::vector<double> eg_direction(std::span<const double> position,
                                 std::span<const double> personal_best,
                                 std::span<const double> global_best, double current_fitness,
                                 double personal_fitness, double inertia, Rng& rng);

/// W |g - x_rand| sqrt(-ln(u + (1 - u) r3)) per coordinate.
std::vector<double> step_length(std::span<const double> global_best,
                                std::span<const double> random_seeker, double inertia,
                                double membership_u, double r3);
/// Draws r3 from `rng`.
std::vector<double> step_length(std::span<const double> global_best,
                                std::span<const double> random_seeker, double inertia,
                                double membership_u, Rng& rng);

using FoiFitness = std::function<double(const FoiVector&)>;

struct SoaTraceRow {
    std::size_t iteration = 0; // 0 is the initial population
    double best_fitness = 0.0;
    std::vector<double> best_foi;
};

struct SoaResult {
    FoiVector best;
    double best_fitness = 0.0;
    std::vector<SoaTraceRow> trace;
};

/// Generic minimization over [-bound, bound]^dims.
///
/// Per iteration, all random draws happen first in seeker order
/// (r1, r2, random seeker index, r3), then every fitness is evaluated, then
/// personal and global bests are updated in seeker order.
SoaResult soa_minimize(std::size_t dims, const SoaConfig& config, const FoiFitness& fitness);

/// Fitness = max_sidelobe(geom, foi, target, search).power.
SoaResult soa_optimize(const ArrayGeometry& geom, const FieldPoint& target,
                       const SoaConfig& config, const SearchSettings& search);
SoaResult soa_optimize(const ArrayGeometry& geom, const FieldPoint& target,
                       const SoaConfig& config);

} // namespace fdsa
