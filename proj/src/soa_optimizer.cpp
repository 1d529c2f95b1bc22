// SPDX-License-Identifier: Apache-2.0
#include "fdsa/soa_optimizer.hpp"

#include "fdsa/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fdsa {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void require_same_length(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw DomainError("seeker vectors must have equal length");
    }
}

// Rank I_s per seeker: the lowest fitness gets S, ties keep seeker order.
std::vector<std::size_t> ranks_of(const std::vector<double>& fitness)
{
    const std::size_t s_count = fitness.size();
    std::vector<std::size_t> order(s_count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return fitness[i] < fitness[j]; });
    std::vector<std::size_t> rank(s_count);
    for (std::size_t pos = 0; pos < s_count; ++pos) {
        rank[order[pos]] = s_count - pos;
    }
    return rank;
}

} // namespace

void SoaConfig::validate() const
{
    if (population < 2) {
        throw DomainError("SOA population must be at least 2");
    }
    if (iterations < 1) {
        throw DomainError("SOA needs at least one iteration");
    }
    if (!(u_min > 0.0 && u_min < u_max && u_max < 1.0)) {
        throw DomainError("SOA membership bounds must satisfy 0 < u_min < u_max < 1");
    }
    if (!(bound_hz >= 0.0) || !std::isfinite(bound_hz)) {
        throw DomainError("SOA FOI bound must be non-negative");
    }
}

double inertia_weight(std::size_t t, std::size_t iterations)
{
    if (iterations == 0 || t < 1 || t > iterations) {
        throw DomainError("inertia weight needs 1 <= t <= T");
    }
    return 0.9 - 0.8 * static_cast<double>(t) / static_cast<double>(iterations);
}

double membership_degree(std::size_t rank, std::size_t population, double u_max, double u_min)
{
    if (population < 2) {
        throw DomainError("membership degree needs a population of at least 2");
    }
    if (rank < 1 || rank > population) {
        throw DomainError("seeker rank must lie in [1, S]");
    }
    const double frac =
        static_cast<double>(population - rank) / static_cast<double>(population - 1);
    return u_max - frac * (u_max - u_min);
}

std::vector<double> eg_direction(std::span<const double> position,
                                 std::span<const double> personal_best,
                                 std::span<const double> global_best, double current_fitness,
                                 double personal_fitness, double inertia, double r1, double r2)
{
    require_same_length(position, personal_best);
    require_same_length(position, global_best);
    const double d_pro = sign(current_fitness - personal_fitness);
    std::vector<double> out(position.size());
    for (std::size_t i = 0; i < position.size(); ++i) {
        const double d_ego = sign(personal_best[i] - position[i]);
        const double d_alt = sign(global_best[i] - position[i]);
        out[i] = sign(r1 * d_ego + r2 * d_alt + inertia * d_pro);
    }
    return out;
}

std::vector<double> eg_direction(std::span<const double> position,
                                 std::span<const double> personal_best,
                                 std::span<const double> global_best, double current_fitness,
                                 double personal_fitness, double inertia, Rng& rng)
{
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    return eg_direction(position, personal_best, global_best, current_fitness, personal_fitness,
                        inertia, r1, r2);
}

std::vector<double> step_length(std::span<const double> global_best,
                                std::span<const double> random_seeker, double inertia,
                                double membership_u, double r3)
{
    require_same_length(global_best, random_seeker);
    if (!(membership_u > 0.0 && membership_u < 1.0)) {
        throw DomainError("membership degree must lie in (0, 1)");
    }
    // u + (1-u) r3 lies in [u, 1], so the log is finite and non-positive.
    const double scale = inertia * std::sqrt(-std::log(membership_u + (1.0 - membership_u) * r3));
    std::vector<double> out(global_best.size());
    for (std::size_t i = 0; i < global_best.size(); ++i) {
        out[i] = scale * std::abs(global_best[i] - random_seeker[i]);
    }
    return out;
}

std::vector<double> step_length(std::span<const double> global_best,
                                std::span<const double> random_seeker, double inertia,
                                double membership_u, Rng& rng)
{
    return step_length(global_best, random_seeker, inertia, membership_u, rng.uniform());
}

SoaResult soa_minimize(std::size_t dims, const SoaConfig& config, const FoiFitness& fitness)
{
    config.validate();
    if (dims == 0) {
        throw DomainError("SOA needs at least one coordinate");
    }
    const std::size_t s_count = config.population;
    const double bound = config.bound_hz;
    Rng rng(config.seed);

    std::vector<std::vector<double>> position(s_count, std::vector<double>(dims));
    for (auto& x : position) {
        for (double& v : x) {
            v = rng.uniform(-bound, bound);
        }
    }
    auto evaluate = [&](const std::vector<double>& x) { return fitness(FoiVector(x, bound)); };

    std::vector<double> current(s_count);
    for (std::size_t s = 0; s < s_count; ++s) {
        current[s] = evaluate(position[s]);
    }
    auto personal = position;
    auto personal_fitness = current;
    std::size_t best = 0;
    for (std::size_t s = 1; s < s_count; ++s) {
        if (current[s] < current[best]) {
            best = s;
        }
    }
    std::vector<double> global = position[best];
    double global_fitness = current[best];

    SoaResult result;
    result.trace.push_back({0, global_fitness, global});

    for (std::size_t t = 1; t <= config.iterations; ++t) {
        const double w = inertia_weight(t, config.iterations);
        const auto rank = ranks_of(current);
        for (std::size_t s = 0; s < s_count; ++s) {
            const auto dir = eg_direction(position[s], personal[s], global, current[s],
                                          personal_fitness[s], w, rng);
            // A second seeker other than s.
            std::size_t other = rng.index(s_count - 1);
            if (other >= s) {
                ++other;
            }
            const double u = membership_degree(rank[s], s_count, config.u_max, config.u_min);
            const auto len = step_length(global, position[other], w, u, rng);
            for (std::size_t i = 0; i < dims; ++i) {
                position[s][i] = std::clamp(position[s][i] + dir[i] * len[i], -bound, bound);
            }
        }
        for (std::size_t s = 0; s < s_count; ++s) {
            current[s] = evaluate(position[s]);
        }
        for (std::size_t s = 0; s < s_count; ++s) {
            if (current[s] < personal_fitness[s]) {
                personal_fitness[s] = current[s];
                personal[s] = position[s];
            }
            if (current[s] < global_fitness) {
                global_fitness = current[s];
                global = position[s];
            }
        }
        result.trace.push_back({t, global_fitness, global});
    }
    result.best = FoiVector(global, bound);
    result.best_fitness = global_fitness;
    return result;
}

SoaResult soa_optimize(const ArrayGeometry& geom, const FieldPoint& target,
                       const SoaConfig& config, const SearchSettings& search)
{
    search.validate();
    return soa_minimize(geom.subarrays, config, [&](const FoiVector& foi) {
        return max_sidelobe(geom, foi, target, search).power;
    });
}

SoaResult soa_optimize(const ArrayGeometry& geom, const FieldPoint& target,
                       const SoaConfig& config)
{
    return soa_optimize(geom, target, config, SearchSettings::around(target));
}

} // namespace fdsa
