// SPDX-License-Identifier: Apache-2.0
#include "fdsa/secrecy_metrics.hpp"

#include "fdsa/error.hpp"
#include "fdsa/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace fdsa {

namespace {

std::vector<double> axis(double lo, double hi, double step)
{
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + static_cast<double>(i) * step;
    }
    return out;
}

double bob_snr(const ArrayGeometry& geom, const Beamformer& beam, const FieldPoint& target,
               const LinkBudget& link)
{
    const double power = beam.gain(geom, target, target).power;
    return snr(power, link.noise.bob_noise_mw, link.tx_power_mw, link.path_loss, target.range_m);
}

double eve_snr(const ArrayGeometry& geom, const Beamformer& beam, const FieldPoint& target,
               const FieldPoint& eve, const LinkBudget& link)
{
    const double power = beam.gain(geom, eve, target).power;
    return snr(power, link.noise.eve_noise_mw, link.tx_power_mw, link.path_loss, eve.range_m);
}

} // namespace

double path_loss_db(double range_m)
{
    if (!(range_m > 0.0)) {
        throw DomainError("path loss needs a positive range");
    }
    return kPathLossInterceptDb + 10.0 * kPathLossExponent * std::log10(range_m);
}

NoiseModel NoiseModel::from_dbm(double bob_dbm, double eve_dbm)
{
    NoiseModel n{dbm_to_mw(bob_dbm), dbm_to_mw(eve_dbm)};
    n.validate();
    return n;
}

void NoiseModel::validate() const
{
    if (!(bob_noise_mw > 0.0) || !(eve_noise_mw > 0.0)) {
        throw DomainError("noise powers must be positive");
    }
}

double snr(double power, double noise_mw, double tx_power_mw, bool use_path_loss, double range_m)
{
    double value = tx_power_mw * power / noise_mw;
    if (use_path_loss) {
        value *= std::pow(10.0, -path_loss_db(range_m) / 10.0);
    }
    return value;
}

double secrecy_rate(double bob_snr, double eve_snr)
{
    const double diff = (std::log1p(bob_snr) - std::log1p(eve_snr)) / std::numbers::ln2;
    return std::max(0.0, diff);
}

std::string_view beam_kind_name(BeamKind kind)
{
    switch (kind) {
    case BeamKind::Fab:
        return "fab";
    case BeamKind::Rab:
        return "rab";
    case BeamKind::Frb:
        return "frb";
    }
    return "unknown";
}

Beamformer Beamformer::fab() { return Beamformer{BeamKind::Fab, {}, 0.0}; }
Beamformer Beamformer::rab(double delta_f_hz) { return Beamformer{BeamKind::Rab, {}, delta_f_hz}; }
Beamformer Beamformer::frb(FoiVector foi) { return Beamformer{BeamKind::Frb, std::move(foi), 0.0}; }

BeamSample Beamformer::gain(const ArrayGeometry& geom, const FieldPoint& point,
                            const FieldPoint& target) const
{
    switch (kind) {
    case BeamKind::Fab:
        return fab_gain(geom, geom.total_elements(), point, target);
    case BeamKind::Rab:
        return rab_gain(geom, geom.total_elements(), rab_delta_f_hz, point, target);
    case BeamKind::Frb:
        return frb_gain(geom, foi, point, target);
    }
    throw DomainError("unknown beamformer");
}

Region Beamformer::region(const ArrayGeometry& geom, const FieldPoint& point,
                          const FieldPoint& target) const
{
    const auto args = kernel_args(geom, point, target);
    if (kind == BeamKind::Frb) {
        return classify_args(geom, foi.offsets(), args);
    }
    // FAB/RAB: one L-element array with a single (possibly zero) FOI.
    ArrayGeometry whole = geom;
    whole.subarrays = 1;
    whole.elements_per_subarray = geom.total_elements();
    const double df = kind == BeamKind::Rab ? rab_delta_f_hz : 0.0;
    return covering_strips(whole, std::span<const double>(&df, 1), args) == 1 ? Region::Main
                                                                                : Region::Sidelobe;
}

bool Beamformer::in_main_region(const ArrayGeometry& geom, const FieldPoint& point,
                                const FieldPoint& target) const
{
    return region(geom, point, target) == Region::Main;
}

double secrecy_rate_at(const ArrayGeometry& geom, const Beamformer& beam, const FieldPoint& target,
                       const FieldPoint& eve, const LinkBudget& link)
{
    link.noise.validate();
    return secrecy_rate(bob_snr(geom, beam, target, link), eve_snr(geom, beam, target, eve, link));
}

GridSpec GridSpec::default_for(const FieldPoint& target)
{
    GridSpec g;
    g.range_max_m = 2.0 * target.range_m;
    return g;
}

void GridSpec::validate() const
{
    if (!(theta_step_deg > 0.0) || !(range_step_m > 0.0)) {
        throw DomainError("grid steps must be positive");
    }
    if (!(theta_min_deg >= 0.0 && theta_max_deg <= 180.0 && theta_min_deg <= theta_max_deg)) {
        throw DomainError("grid angle window must satisfy 0 <= min <= max <= 180 deg");
    }
    if (!(range_min_m > 0.0 && range_min_m <= range_max_m)) {
        throw DomainError("grid range window must satisfy 0 < min <= max");
    }
}

std::vector<double> GridSpec::theta_values() const
{
    return axis(theta_min_deg, theta_max_deg, theta_step_deg);
}

std::vector<double> GridSpec::range_values() const
{
    return axis(range_min_m, range_max_m, range_step_m);
}

SrGrid sr_map(const ArrayGeometry& geom, const Beamformer& beam, const FieldPoint& target,
              const LinkBudget& link, const GridSpec& grid)
{
    grid.validate();
    link.noise.validate();
    SrGrid out;
    out.theta_deg = grid.theta_values();
    out.range_m = grid.range_values();
    out.sr.resize(out.theta_deg.size() * out.range_m.size());
    out.excluded.resize(out.sr.size(), false);

    const double bob = bob_snr(geom, beam, target, link);
    const double target_deg = rad_to_deg(target.theta_rad);
    for (std::size_t i = 0; i < out.theta_deg.size(); ++i) {
        for (std::size_t j = 0; j < out.range_m.size(); ++j) {
            const auto eve = FieldPoint::from_degrees(out.theta_deg[i], out.range_m[j]);
            const auto k = out.index(i, j);
            out.sr[k] = secrecy_rate(bob, eve_snr(geom, beam, target, eve, link));
            // Eve inside Bob's own resolution cell.
            const bool near_bob = std::abs(out.theta_deg[i] - target_deg) < grid.theta_step_deg &&
                                  std::abs(out.range_m[j] - target.range_m) < grid.range_step_m;
            out.excluded[k] = near_bob && beam.in_main_region(geom, eve, target);
        }
    }
    return out;
}

std::vector<ProfileRow> sr_profile(const ArrayGeometry& geom, const Beamformer& beam,
                                   const FieldPoint& target, const LinkBudget& link,
                                   const ProfileSpec& spec)
{
    spec.sweep.validate();
    link.noise.validate();
    const double bob = bob_snr(geom, beam, target, link);
    std::vector<ProfileRow> rows;
    auto emit = [&](double parameter, double theta_deg, double range_m) {
        const auto eve = FieldPoint::from_degrees(theta_deg, range_m);
        rows.push_back({parameter, theta_deg, range_m,
                        secrecy_rate(bob, eve_snr(geom, beam, target, eve, link)),
                        beam.in_main_region(geom, eve, target)});
    };

    switch (spec.trajectory) {
    case Trajectory::T12:
        for (double t : spec.sweep.theta_values()) {
            emit(t, t, spec.fixed_range_m);
        }
        break;
    case Trajectory::T13: {
        if (spec.locus_delta_f_hz == 0.0) {
            throw ConfigError("trajectory T13 needs a nonzero RAB FOI to define the mainlobe line");
        }
        const double cos_target = std::cos(target.theta_rad);
        for (double t : spec.sweep.theta_values()) {
            const double dcos = std::cos(deg_to_rad(t)) - cos_target;
            const double r =
                target.range_m + mainlobe_locus_range(geom, spec.locus_delta_f_hz, dcos);
            if (r >= spec.sweep.range_min_m && r <= spec.sweep.range_max_m) {
                emit(t, t, r);
            }
        }
        break;
    }
    case Trajectory::T14:
        for (double r : spec.sweep.range_values()) {
            emit(r, spec.fixed_theta_deg, r);
        }
        break;
    }
    return rows;
}

double secrecy_outage_probability(const SrGrid& grid, double gamma_bits)
{
    std::size_t counted = 0;
    std::size_t outage = 0;
    for (std::size_t k = 0; k < grid.sr.size(); ++k) {
        if (grid.excluded[k]) {
            continue;
        }
        ++counted;
        if (grid.sr[k] < gamma_bits) {
            ++outage;
        }
    }
    if (counted == 0) {
        throw DomainError("outage probability over an empty grid");
    }
    return static_cast<double>(outage) / static_cast<double>(counted);
}

std::vector<double> angle_averaged_sr(const SrGrid& grid)
{
    std::vector<double> out(grid.range_m.size(), 0.0);
    for (std::size_t j = 0; j < grid.range_m.size(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.theta_deg.size(); ++i) {
            sum += grid.at(i, j);
        }
        out[j] = sum / static_cast<double>(grid.theta_deg.size());
    }
    return out;
}

double angle_range_averaged_sr(const SrGrid& grid)
{
    if (grid.sr.empty()) {
        throw DomainError("average over an empty grid");
    }
    return std::accumulate(grid.sr.begin(), grid.sr.end(), 0.0) /
           static_cast<double>(grid.sr.size());
}

double relative_bandwidth(double max_offset_hz, double fab_bandwidth_hz)
{
    if (!(fab_bandwidth_hz > 0.0)) {
        throw DomainError("FAB bandwidth must be positive");
    }
    if (max_offset_hz < 0.0) {
        throw DomainError("max FOI must be non-negative");
    }
    const double half = 0.5 * fab_bandwidth_hz;
    if (max_offset_hz > half) {
        throw DomainError("FRB spectrum exceeds the FAB band");
    }
    return 1.0 - max_offset_hz / half;
}

} // namespace fdsa
