// SPDX-License-Identifier: Apache-2.0
#include "fdsa/error.hpp"
#include "fdsa/random.hpp"
#include "fdsa/soa_optimizer.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

using namespace fdsa;

TEST_CASE("inertia weight")
{
    CHECK(inertia_weight(10, 10) == doctest::Approx(0.1));
    CHECK(inertia_weight(5, 10) == doctest::Approx(0.5));
    for (std::size_t t = 1; t < 50; ++t) {
        CHECK(inertia_weight(t + 1, 50) < inertia_weight(t, 50));
    }
    CHECK_THROWS_AS(inertia_weight(0, 10), DomainError);
    CHECK_THROWS_AS(inertia_weight(11, 10), DomainError);
}

TEST_CASE("membership degree")
{
    CHECK(membership_degree(40, 40) == doctest::Approx(0.95).epsilon(1e-15));
    CHECK(membership_degree(1, 40) == doctest::Approx(0.0111).epsilon(1e-15));
    CHECK(membership_degree(2, 3) == doctest::Approx((0.95 + 0.0111) / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(membership_degree(1, 1), DomainError);
    CHECK_THROWS_AS(membership_degree(0, 5), DomainError);
    CHECK_THROWS_AS(membership_degree(6, 5), DomainError);
}

TEST_CASE("empirical-gradient direction")
{
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK(eg_direction(x, x, x, 0.5, 0.5, 0.7, 0.3, 0.9) == std::vector<double>{0.0, 0.0, 0.0});

    // d_ego = (+1, -1, 0), d_alt = (-1, -1, +1), d_pro = +1 (current worse than personal).
    const std::vector<double> p{2.0, 1.0, 3.0};
    const std::vector<double> g{0.0, 1.0, 4.0};
    const auto d = eg_direction(x, p, g, 2.0, 1.0, 0.2, 0.5, 0.1);
    // 0.5 - 0.1 + 0.2 > 0; -0.5 - 0.1 + 0.2 < 0; 0 + 0.1 + 0.2 > 0.
    CHECK(d == std::vector<double>{1.0, -1.0, 1.0});

    Rng a(99);
    Rng b(99);
    Rng draws(5);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> u(4), v(4), w(4);
        for (std::size_t k = 0; k < 4; ++k) {
            u[k] = draws.uniform(-1.0, 1.0);
            v[k] = draws.uniform(-1.0, 1.0);
            w[k] = draws.uniform(-1.0, 1.0);
        }
        const double f1 = draws.uniform();
        const double f2 = draws.uniform();
        const auto da = eg_direction(u, v, w, f1, f2, 0.6, a);
        CHECK(da == eg_direction(u, v, w, f1, f2, 0.6, b));
        for (double s : da) {
            CHECK((s == -1.0 || s == 0.0 || s == 1.0));
        }
    }
}

TEST_CASE("step length")
{
    const std::vector<double> g{1.0, -2.0};
    const std::vector<double> r{0.0, 2.0};
    CHECK(step_length(g, r, 0.5, 0.3, 1.0) == std::vector<double>{0.0, 0.0});
    CHECK(step_length(g, g, 0.5, 0.3, 0.2) == std::vector<double>{0.0, 0.0});
    const auto s = step_length(g, r, 0.5, 0.3, 0.0);
    CHECK(s[0] == doctest::Approx(0.5 * 1.0 * std::sqrt(-std::log(0.3))));
    CHECK(s[1] == doctest::Approx(0.5 * 4.0 * std::sqrt(-std::log(0.3))));
    CHECK_THROWS_AS(step_length(g, r, 0.5, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(step_length(g, r, 0.5, 1.0, 0.5), DomainError);

    // Better rank (u near 1) gives shorter steps on average.
    Rng rng(1234);
    const std::vector<double> one{1.0};
    const std::vector<double> zero{0.0};
    double mean_best = 0.0;
    double mean_worst = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        mean_best += step_length(one, zero, 1.0, 0.95, rng)[0];
        mean_worst += step_length(one, zero, 1.0, 0.0111, rng)[0];
    }
    mean_best /= draws;
    mean_worst /= draws;
    CHECK(mean_best < 0.5 * mean_worst);
}

TEST_CASE("config validation")
{
    SoaConfig c;
    CHECK_NOTHROW(c.validate());
    c.population = 1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = SoaConfig{};
    c.iterations = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = SoaConfig{};
    c.u_min = 0.96;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = SoaConfig{};
    c.bound_hz = -1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("generic minimization: trace, feasibility, dominance, evaluation count")
{
    SoaConfig c;
    c.population = 12;
    c.iterations = 40;
    c.bound_hz = 3.0;
    c.seed = 42;
    std::size_t evaluations = 0;
    double best_seen = std::numeric_limits<double>::infinity();
    std::vector<double> best_seen_after_batch;
    const auto sphere = [&](const FoiVector& x) {
        ++evaluations;
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(std::abs(x[i]) <= 3.0);
            s += (x[i] - 1.5) * (x[i] - 1.5);
        }
        best_seen = std::min(best_seen, s);
        if (evaluations % c.population == 0) {
            best_seen_after_batch.push_back(best_seen);
        }
        return s;
    };
    const auto result = soa_minimize(4, c, sphere);
    CHECK(evaluations == c.population * (c.iterations + 1));
    REQUIRE(result.trace.size() == c.iterations + 1);
    REQUIRE(best_seen_after_batch.size() == result.trace.size());
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        CHECK(result.trace[i].iteration == i);
        // The global best is the best of everything evaluated so far.
        CHECK(result.trace[i].best_fitness == best_seen_after_batch[i]);
        if (i > 0) {
            CHECK(result.trace[i].best_fitness <= result.trace[i - 1].best_fitness);
        }
    }
    CHECK(result.best_fitness == result.trace.back().best_fitness);
    CHECK(result.best_fitness < 0.05 * result.trace.front().best_fitness);

    // The optimum sits past the bound: clamping must keep every coordinate feasible.
    c.bound_hz = 1.0;
    std::size_t on_bound = 0;
    const auto clamped = soa_minimize(4, c, [&](const FoiVector& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(std::abs(x[i]) <= 1.0);
            on_bound += x[i] == 1.0 ? 1 : 0;
            s += (x[i] - 5.0) * (x[i] - 5.0);
        }
        return s;
    });
    CHECK(on_bound > 0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(clamped.best[i] > 0.8);
    }
}

TEST_CASE("seed determinism")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 5, 7);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    SoaConfig c;
    c.population = 6;
    c.iterations = 5;
    c.bound_hz = 1e-5 * g.carrier_hz;
    c.seed = 77;
    const auto a = soa_optimize(g, t, c);
    const auto b = soa_optimize(g, t, c);
    CHECK(a.best_fitness == b.best_fitness);
    for (std::size_t m = 0; m < 5; ++m) {
        CHECK(a.best[m] == b.best[m]);
    }
    c.seed = 78;
    const auto d = soa_optimize(g, t, c);
    bool differs = false;
    for (std::size_t m = 0; m < 5; ++m) {
        differs = differs || d.best[m] != a.best[m];
    }
    CHECK(differs);
}

TEST_CASE("zero bound collapses to the conventional array")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 4, 6);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    SoaConfig c;
    c.population = 3;
    c.iterations = 2;
    c.bound_hz = 0.0;
    const auto r = soa_optimize(g, t, c);
    for (std::size_t m = 0; m < 4; ++m) {
        CHECK(r.best[m] == 0.0);
    }
    const auto fab = max_sidelobe(g, FoiVector::zeros(4, 0.0), t, SearchSettings::around(t));
    CHECK(r.best_fitness == doctest::Approx(fab.power).epsilon(1e-12));
}

TEST_CASE("optimized FOIs lower the highest sidelobe")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 7, 7);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    SoaConfig c;
    c.population = 10;
    c.iterations = 10;
    c.bound_hz = 1e-5 * g.carrier_hz;
    const auto r = soa_optimize(g, t, c);
    CHECK(r.best_fitness < r.trace.front().best_fitness);
    CHECK(r.best_fitness < 1.0);
    CHECK(max_sidelobe(g, r.best, t, SearchSettings::around(t)).power == r.best_fitness);
}

TEST_CASE("run time grows linearly with the population")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 5, 5);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    const auto run = [&](std::size_t s) {
        SoaConfig c;
        c.population = s;
        c.iterations = 4;
        c.bound_hz = 1e-5 * g.carrier_hz;
        const auto start = std::chrono::steady_clock::now();
        soa_optimize(g, t, c);
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    run(10); // warm up
    const double t10 = run(10);
    const double t20 = run(20);
    const double t40 = run(40);
    // Linear scaling within a factor of 2 at each doubling.
    CHECK(t20 / t10 > 1.0);
    CHECK(t20 / t10 < 4.0);
    CHECK(t40 / t20 > 1.0);
    CHECK(t40 / t20 < 4.0);
    MESSAGE("SOA seconds for S = 10, 20, 40: " << t10 << ", " << t20 << ", " << t40);
}
