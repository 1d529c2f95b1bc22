// SPDX-License-Identifier: Apache-2.0
#include "fdsa/commands.hpp"

#include "fdsa/error.hpp"
#include "fdsa/units.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace fdsa {

namespace {

std::string num(double v) { return format_double(v); }

const FieldPoint& require_eve(const Scenario& s)
{
    if (!s.eve) {
        throw ConfigError("bcdla minimizes the beam at a known eavesdropper location; "
                          "set eve_theta_deg and eve_range_m");
    }
    return *s.eve;
}

std::vector<std::string> trace_header(std::size_t m_count)
{
    std::vector<std::string> h{"iteration", "objective", "max_change_hz"};
    for (std::size_t m = 0; m < m_count; ++m) {
        h.push_back("foi_" + std::to_string(m) + "_hz");
    }
    return h;
}

std::vector<std::string> trace_row(std::size_t iteration, double objective, double change,
                                   const std::vector<double>& foi)
{
    std::vector<std::string> r{std::to_string(iteration), num(objective), num(change)};
    for (double f : foi) {
        r.push_back(num(f));
    }
    return r;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

void write_foi(CsvWriter& csv, const FoiVector& foi)
{
    for (std::size_t m = 0; m < foi.size(); ++m) {
        csv.row({"foi_" + std::to_string(m) + "_hz", num(foi[m])});
    }
}

void write_point(CsvWriter& csv, const std::string& prefix, double theta_deg, const FieldPoint& p)
{
    csv.row({prefix + "_theta_deg", num(theta_deg)});
    csv.row({prefix + "_range_m", num(p.range_m)});
}

void write_point(CsvWriter& csv, const std::string& prefix, const FieldPoint& p)
{
    write_point(csv, prefix, rad_to_deg(p.theta_rad), p);
}

} // namespace

void CsvWriter::row(const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        out_ << cells[i];
    }
    out_ << '\n';
}

void CsvWriter::blank() { out_ << '\n'; }

Beamformer resolve_beamformer(const Scenario& s)
{
    switch (s.beamformer) {
    case BeamKind::Fab:
        return Beamformer::fab();
    case BeamKind::Rab:
        return Beamformer::rab(s.rab_delta_f_hz);
    case BeamKind::Frb:
        break;
    }
    const auto& geom = s.geometry;
    switch (s.foi_source) {
    case FoiSource::Zero:
        return Beamformer::frb(FoiVector::zeros(geom.subarrays, s.max_offset_hz));
    case FoiSource::List:
        return Beamformer::frb(FoiVector(s.foi_list_hz, s.max_offset_hz));
    case FoiSource::Soa:
        return Beamformer::frb(soa_optimize(geom, s.target, s.soa, s.search).best);
    case FoiSource::Bcdla:
        return Beamformer::frb(bcdla_optimize(geom, s.target, require_eve(s), s.bcdla).foi);
    }
    throw ConfigError("unknown FOI source");
}

void cmd_pattern(const Scenario& s, std::ostream& out)
{
    const Beamformer beam = resolve_beamformer(s);
    CsvWriter csv(out);
    csv.row({"theta_deg", "range_m", "gain_abs", "gain_db", "region"});
    const auto thetas = s.grid.theta_values();
    const auto ranges = s.grid.range_values();
    for (double t : thetas) {
        for (double r : ranges) {
            const auto p = FieldPoint::from_degrees(t, r);
            const double mag = std::abs(beam.gain(s.geometry, p, s.target).value);
            // Floor at -300 dB so exact nulls stay finite.
            const double db = 20.0 * std::log10(std::max(mag, 1e-15));
            csv.row({num(t), num(r), num(mag), num(db),
                     std::string(region_name(beam.region(s.geometry, p, s.target)))});
        }
    }
}

void cmd_profile(const Scenario& s, std::ostream& out)
{
    if (s.profile.trajectory == Trajectory::T13 && s.rab_delta_f_hz == 0.0) {
        throw ConfigError("trajectory T13 follows the RAB mainlobe line; set rab_delta_f_hz");
    }
    const Beamformer beam = resolve_beamformer(s);
    const auto rows = sr_profile(s.geometry, beam, s.target, s.link(), s.profile);
    CsvWriter csv(out);
    csv.row({"parameter", "theta_deg", "range_m", "sr_bits"});
    for (const auto& row : rows) {
        csv.row({num(row.parameter), num(row.theta_deg), num(row.range_m), num(row.sr_bits)});
    }
}

void cmd_optimize(const Scenario& s, Algorithm algorithm, std::ostream& out)
{
    const auto& geom = s.geometry;
    const auto link = s.link();
    CsvWriter csv(out);
    csv.row(trace_header(geom.subarrays));

    if (algorithm == Algorithm::Soa) {
        const auto result = soa_optimize(geom, s.target, s.soa, s.search);
        for (std::size_t i = 0; i < result.trace.size(); ++i) {
            const auto& row = result.trace[i];
            const double change =
                i == 0 ? 0.0 : max_abs_diff(row.best_foi, result.trace[i - 1].best_foi);
            csv.row(trace_row(row.iteration, row.best_fitness, change, row.best_foi));
        }
        const auto beam = Beamformer::frb(result.best);
        const auto peak = max_sidelobe(geom, result.best, s.target, s.search);
        csv.blank();
        csv.row({"key", "value"});
        csv.row({"algorithm", "soa"});
        csv.row({"objective", num(result.best_fitness)});
        csv.row({"objective_db", num(linear_to_db(std::max(result.best_fitness, 1e-300)))});
        write_point(csv, "peak", peak.location);
        csv.row({"peak_region", std::string(region_name(peak.region))});
        csv.row({"sr_at_peak_bits",
                 num(secrecy_rate_at(geom, beam, s.target, peak.location, link))});
        if (s.eve) {
            write_point(csv, "eve", s.eve_theta_deg, *s.eve);
            csv.row({"sr_at_eve_bits", num(secrecy_rate_at(geom, beam, s.target, *s.eve, link))});
        }
        write_foi(csv, result.best);
        return;
    }

    const FieldPoint& eve = require_eve(s);
    const auto result = bcdla_optimize(geom, s.target, eve, s.bcdla);
    for (const auto& row : result.trace) {
        csv.row(trace_row(row.sweep, row.objective, row.max_change_hz, row.foi));
    }
    const auto beam = Beamformer::frb(result.foi);
    csv.blank();
    csv.row({"key", "value"});
    csv.row({"algorithm", "bcdla"});
    csv.row({"initial_objective", num(result.initial_objective)});
    csv.row({"objective", num(result.final_objective)});
    csv.row({"objective_db", num(linear_to_db(std::max(result.final_objective, 1e-300)))});
    csv.row({"converged", result.converged ? "1" : "0"});
    csv.row({"sweeps", std::to_string(result.trace.size() - 1)});
    write_point(csv, "eve", s.eve_theta_deg, eve);
    csv.row({"sr_at_eve_bits", num(secrecy_rate_at(geom, beam, s.target, eve, link))});
    write_foi(csv, result.foi);
}

void cmd_sop(const Scenario& s, std::ostream& out)
{
    if (s.sop_gammas.empty() || s.sop_max_offset_fractions.empty()) {
        throw ConfigError("sop needs non-empty sop_gammas and sop_max_offset_fractions");
    }
    const auto& geom = s.geometry;
    const auto link = s.link();
    CsvWriter csv(out);
    csv.row({"delta_f_max_hz", "gamma", "sop"});
    for (double fraction : s.sop_max_offset_fractions) {
        if (!(fraction >= 0.0)) {
            throw DomainError("sop bound fractions must be non-negative");
        }
        const double bound = fraction * geom.carrier_hz;
        Beamformer beam = Beamformer::fab(); // a zero bound collapses FRB to FAB
        if (bound > 0.0) {
            SoaConfig soa = s.soa;
            soa.bound_hz = bound;
            beam = Beamformer::frb(soa_optimize(geom, s.target, soa, s.search).best);
        }
        const auto grid = sr_map(geom, beam, s.target, link, s.grid);
        for (double gamma : s.sop_gammas) {
            csv.row({num(bound), num(gamma), num(secrecy_outage_probability(grid, gamma))});
        }
    }
}

void cmd_rbw(const Scenario& s, std::ostream& out)
{
    if (s.sop_max_offset_fractions.empty()) {
        throw ConfigError("rbw needs a non-empty sop_max_offset_fractions list");
    }
    CsvWriter csv(out);
    csv.row({"delta_f_max_hz", "fab_bandwidth_hz", "rbw", "decrease_percent"});
    for (double fraction : s.sop_max_offset_fractions) {
        const double bound = fraction * s.geometry.carrier_hz;
        const double rbw = relative_bandwidth(bound, s.fab_bandwidth_hz);
        csv.row({num(bound), num(s.fab_bandwidth_hz), num(rbw), num(100.0 * (1.0 - rbw))});
    }
}

} // namespace fdsa
