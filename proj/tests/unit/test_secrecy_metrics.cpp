// SPDX-License-Identifier: Apache-2.0
#include "fdsa/error.hpp"
#include "fdsa/random.hpp"
#include "fdsa/secrecy_metrics.hpp"
#include "fdsa/units.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace fdsa;

namespace {

FoiVector antisymmetric_foi(Rng& rng, std::size_t m_count, double bound)
{
    std::vector<double> v(m_count, 0.0);
    for (std::size_t m = 0; m < m_count / 2; ++m) {
        v[m] = rng.uniform(-bound, bound);
        v[m_count - 1 - m] = -v[m];
    }
    return FoiVector(v, bound);
}

FoiVector random_foi(Rng& rng, std::size_t m_count, double bound)
{
    std::vector<double> v(m_count);
    for (double& f : v) {
        f = rng.uniform(-bound, bound);
    }
    return FoiVector(v, bound);
}

LinkBudget no_path_loss()
{
    LinkBudget link;
    link.path_loss = false;
    return link;
}

GridSpec small_grid()
{
    GridSpec g;
    g.theta_min_deg = 60.0;
    g.theta_max_deg = 120.0;
    g.theta_step_deg = 1.0;
    g.range_min_m = 300.0;
    g.range_max_m = 700.0;
    g.range_step_m = 10.0;
    return g;
}

} // namespace

TEST_CASE("log-distance path loss")
{
    CHECK(path_loss_db(1.0) == doctest::Approx(69.8).epsilon(1e-15));
    CHECK(path_loss_db(100.0) == doctest::Approx(109.8).epsilon(1e-15));
    CHECK(kPathLossInterceptDb == 69.8);
    CHECK(kPathLossExponent == 2.0);
    CHECK_THROWS_AS(path_loss_db(0.0), DomainError);
    CHECK_THROWS_AS(path_loss_db(-5.0), DomainError);
}

TEST_CASE("snr")
{
    CHECK(snr(0.0, 1e-10, 1e4, true, 100.0) == 0.0);
    CHECK(snr(1.0, 1e-10, 1e4, false, 100.0) == doctest::Approx(1e14).epsilon(1e-15));
    CHECK(snr(1.0, 1e-10, 1e4, true, 100.0) ==
          doctest::Approx(1e14 * std::pow(10.0, -10.98)).epsilon(1e-13));
    CHECK(dbm_to_mw(40.0) == doctest::Approx(1e4));
    CHECK(dbm_to_mw(-100.0) == doctest::Approx(1e-10));
    const auto noise = NoiseModel::from_dbm(-100.0, -90.0);
    CHECK(noise.bob_noise_mw == doctest::Approx(1e-10));
    CHECK(noise.eve_noise_mw == doctest::Approx(1e-9));
    const NoiseModel bad{0.0, 1e-10};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("secrecy rate")
{
    CHECK(secrecy_rate(41.7, 41.7) == 0.0);
    CHECK(secrecy_rate(1e14, 0.0) == doctest::Approx(std::log2(1.0 + 1e14)).epsilon(1e-15));
    CHECK(secrecy_rate(1.0, 3.0) == 0.0);
    CHECK(secrecy_rate(3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    // Bob at 500 m, unit gain, default link: SNR 10^(14 - 12.3779) = 41.9.
    const auto g = ArrayGeometry::half_wavelength(73e9, 11, 9);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    const LinkBudget link;
    const double bob = snr(1.0, 1e-10, 1e4, true, 500.0);
    CHECK(bob == doctest::Approx(std::pow(10.0, 14.0 - 6.98 - 2.0 * std::log10(500.0))));
    CHECK(std::log2(1.0 + bob) == doctest::Approx(5.4218).epsilon(1e-4));
    const auto far = FieldPoint::from_degrees(30.0, 2e6);
    CHECK(secrecy_rate_at(g, Beamformer::fab(), t, far, link) ==
          doctest::Approx(std::log2(1.0 + bob)).epsilon(1e-6));
    CHECK(secrecy_rate_at(g, Beamformer::fab(), t, t, link) == 0.0);
}

TEST_CASE("without path loss and equal noise, SR is positive iff Bob's gain exceeds Eve's")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 6, 7);
    const auto t = FieldPoint::from_degrees(75.0, 450.0);
    Rng rng(31);
    const auto link = no_path_loss();
    for (int i = 0; i < 500; ++i) {
        const auto beam = Beamformer::frb(random_foi(rng, 6, 1e-5 * g.carrier_hz));
        const auto eve = FieldPoint::from_degrees(rng.uniform(0.0, 180.0), rng.uniform(50.0, 900.0));
        const double bob_gain = std::abs(beam.gain(g, t, t).value);
        const double eve_gain = std::abs(beam.gain(g, eve, t).value);
        CHECK((secrecy_rate_at(g, beam, t, eve, link) > 0.0) == (bob_gain > eve_gain));
    }
}

TEST_CASE("secrecy map")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 7, 9);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    const LinkBudget link;
    const GridSpec grid = small_grid();

    SUBCASE("Bob's cell has zero SR and is excluded")
    {
        Rng rng(2);
        const auto beam = Beamformer::frb(random_foi(rng, 7, 1e-5 * g.carrier_hz));
        const auto map = sr_map(g, beam, t, link, grid);
        CHECK(map.theta_deg.size() == 61);
        CHECK(map.range_m.size() == 41);
        const std::size_t i = 30;
        const std::size_t j = 20;
        CHECK(map.theta_deg[i] == 90.0);
        CHECK(map.range_m[j] == 500.0);
        CHECK(map.at(i, j) == 0.0);
        CHECK(map.excluded[map.index(i, j)]);
        CHECK(std::count(map.excluded.begin(), map.excluded.end(), true) == 1);
    }

    SUBCASE("FAB map is range independent without path loss")
    {
        const auto map = sr_map(g, Beamformer::fab(), t, no_path_loss(), grid);
        for (std::size_t i = 0; i < map.theta_deg.size(); ++i) {
            for (std::size_t j = 1; j < map.range_m.size(); ++j) {
                CHECK(map.at(i, j) == doctest::Approx(map.at(i, 0)).epsilon(1e-12));
            }
        }
    }

    SUBCASE("antisymmetric FRB map is symmetric about Bob")
    {
        Rng rng(4);
        const auto beam = Beamformer::frb(antisymmetric_foi(rng, 7, 1e-5 * g.carrier_hz));
        const auto map = sr_map(g, beam, t, no_path_loss(), grid);
        const std::size_t nt = map.theta_deg.size();
        const std::size_t nr = map.range_m.size();
        for (std::size_t i = 0; i < nt; ++i) {
            for (std::size_t j = 0; j < nr; ++j) {
                // theta -> 180 - theta flips dcos; R -> 2 R_T - R flips dR.
                CHECK(map.at(i, j) == doctest::Approx(map.at(nt - 1 - i, nr - 1 - j)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("outage probability")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 7, 9);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    Rng rng(8);
    const auto beam = Beamformer::frb(random_foi(rng, 7, 1e-5 * g.carrier_hz));
    const auto map = sr_map(g, beam, t, LinkBudget{}, small_grid());
    CHECK(secrecy_outage_probability(map, 0.0) == 0.0);
    CHECK(secrecy_outage_probability(map, 1e9) == 1.0);
    double previous = 0.0;
    for (double gamma = 0.0; gamma <= 8.0; gamma += 0.25) {
        const double sop = secrecy_outage_probability(map, gamma);
        CHECK(sop >= previous);
        previous = sop;
    }

    // Hand count over the non-excluded cells.
    std::size_t counted = 0;
    std::size_t below = 0;
    for (std::size_t k = 0; k < map.sr.size(); ++k) {
        if (!map.excluded[k]) {
            ++counted;
            below += map.sr[k] < 2.0 ? 1 : 0;
        }
    }
    CHECK(secrecy_outage_probability(map, 2.0) == doctest::Approx(double(below) / double(counted)));

    SrGrid empty;
    CHECK_THROWS_AS(secrecy_outage_probability(empty, 1.0), DomainError);
}

TEST_CASE("averaged secrecy rates")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 5, 9);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    Rng rng(12);
    const auto beam = Beamformer::frb(random_foi(rng, 5, 1e-5 * g.carrier_hz));
    const auto map = sr_map(g, beam, t, LinkBudget{}, small_grid());

    const auto per_range = angle_averaged_sr(map);
    REQUIRE(per_range.size() == map.range_m.size());
    for (std::size_t j = 0; j < map.range_m.size(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < map.theta_deg.size(); ++i) {
            sum += map.at(i, j);
        }
        CHECK(per_range[j] == doctest::Approx(sum / double(map.theta_deg.size())));
    }
    const double all = std::accumulate(map.sr.begin(), map.sr.end(), 0.0) / double(map.sr.size());
    CHECK(angle_range_averaged_sr(map) == doctest::Approx(all));

    // Reversing the angle rows leaves both averages unchanged.
    SrGrid flipped = map;
    std::reverse(flipped.theta_deg.begin(), flipped.theta_deg.end());
    for (std::size_t i = 0; i < map.theta_deg.size(); ++i) {
        for (std::size_t j = 0; j < map.range_m.size(); ++j) {
            flipped.sr[flipped.index(map.theta_deg.size() - 1 - i, j)] = map.at(i, j);
        }
    }
    const auto per_range_flipped = angle_averaged_sr(flipped);
    for (std::size_t j = 0; j < map.range_m.size(); ++j) {
        CHECK(per_range_flipped[j] == doctest::Approx(per_range[j]).epsilon(1e-12));
    }
    CHECK(angle_range_averaged_sr(flipped) == doctest::Approx(angle_range_averaged_sr(map)).epsilon(1e-12));
}

TEST_CASE("relative bandwidth")
{
    CHECK(relative_bandwidth(0.0, 1e9) == 1.0);
    CHECK(relative_bandwidth(730e3, 1e9) == doctest::Approx(1.0 - 0.00146).epsilon(1e-15));
    const double d1 = relative_bandwidth(0.0, 1e9) - relative_bandwidth(1e5, 1e9);
    const double d2 = relative_bandwidth(1e5, 1e9) - relative_bandwidth(2e5, 1e9);
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-9));
    CHECK_THROWS_AS(relative_bandwidth(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(relative_bandwidth(-1.0, 1e9), DomainError);
    CHECK_THROWS_AS(relative_bandwidth(6e8, 1e9), DomainError);
}

TEST_CASE("secrecy profiles follow their trajectories")
{
    const auto g = ArrayGeometry::half_wavelength(73e9, 5, 9);
    const auto t = FieldPoint::from_degrees(90.0, 500.0);
    Rng rng(21);
    const auto beam = Beamformer::frb(random_foi(rng, 5, 1e-5 * g.carrier_hz));
    ProfileSpec spec;
    spec.sweep = small_grid();

    SUBCASE("T12 sweeps angle at fixed range")
    {
        spec.trajectory = Trajectory::T12;
        spec.fixed_range_m = 380.0;
        const auto rows = sr_profile(g, beam, t, LinkBudget{}, spec);
        CHECK(rows.size() == 61);
        for (const auto& r : rows) {
            CHECK(r.range_m == 380.0);
            CHECK(r.parameter == r.theta_deg);
            const auto eve = FieldPoint::from_degrees(r.theta_deg, r.range_m);
            CHECK(r.sr_bits == doctest::Approx(secrecy_rate_at(g, beam, t, eve, LinkBudget{})));
        }
    }

    SUBCASE("T14 sweeps range at fixed angle")
    {
        spec.trajectory = Trajectory::T14;
        spec.fixed_theta_deg = 90.0;
        const auto rows = sr_profile(g, beam, t, LinkBudget{}, spec);
        CHECK(rows.size() == 41);
        for (const auto& r : rows) {
            CHECK(r.theta_deg == 90.0);
            CHECK(r.parameter == r.range_m);
        }
        CHECK(rows[20].range_m == 500.0);
        CHECK(rows[20].sr_bits == 0.0);
        CHECK(rows[20].in_main_region);
    }

    SUBCASE("T13 follows the RAB mainlobe line")
    {
        spec.trajectory = Trajectory::T13;
        spec.locus_delta_f_hz = 50e3;
        const auto rab = Beamformer::rab(50e3);
        const auto rows = sr_profile(g, rab, t, no_path_loss(), spec);
        REQUIRE(!rows.empty());
        for (const auto& r : rows) {
            const double dcos = std::cos(deg_to_rad(r.theta_deg)) - std::cos(t.theta_rad);
            CHECK(r.range_m - t.range_m == doctest::Approx(mainlobe_locus_range(g, 50e3, dcos)));
            // RAB's ridge has unit gain everywhere, so Eve matches Bob.
            CHECK(r.sr_bits < 1e-6);
        }
        spec.locus_delta_f_hz = 0.0;
        CHECK_THROWS_AS(sr_profile(g, rab, t, no_path_loss(), spec), ConfigError);
    }
}

TEST_CASE("grid validation")
{
    GridSpec g = small_grid();
    g.theta_step_deg = 0.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = small_grid();
    g.range_max_m = 10.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    const auto d = GridSpec::default_for(FieldPoint::from_degrees(90.0, 500.0));
    CHECK(d.theta_min_deg == 0.0);
    CHECK(d.theta_max_deg == 179.0);
    CHECK(d.theta_step_deg == 0.5);
    CHECK(d.range_min_m == 50.0);
    CHECK(d.range_max_m == 1000.0);
    CHECK(d.range_step_m == 5.0);
    CHECK(d.theta_values().size() == 359);
    CHECK(d.range_values().size() == 191);
}
