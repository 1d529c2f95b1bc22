// SPDX-License-Identifier: Apache-2.0
//
// Link budget, secrecy rate and the grid/profile/outage statistics built on it.
// All SNR arithmetic is linear; dBm and dB only appear at the edges.
#pragma once

#include "fdsa/array_model.hpp"
#include "fdsa/beam_geometry.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace fdsa {

// Log-distance mmWave LoS path loss: alpha + 10 n log10(R).
inline constexpr double kPathLossInterceptDb = 69.8;
inline constexpr double kPathLossExponent = 2.0;

double path_loss_db(double range_m);

struct NoiseModel {
    double bob_noise_mw = 1e-10;
    double eve_noise_mw = 1e-10;

    static NoiseModel from_dbm(double bob_dbm, double eve_dbm);
    void validate() const;
};

struct LinkBudget {
    double tx_power_mw = 1e4;
    NoiseModel noise;
    bool path_loss = true;
};

double snr(double power, double noise_mw, double tx_power_mw, bool use_path_loss, double range_m);

/// [log2(1 + bob) - log2(1 + eve)]^+ in bits/s/Hz.
double secrecy_rate(double bob_snr, double eve_snr);

enum class BeamKind { Fab, Rab, Frb };

std::string_view beam_kind_name(BeamKind kind);

/// Which array factor to evaluate. FAB and RAB use all M*N elements as one array.
struct Beamformer {
    BeamKind kind = BeamKind::Frb;
    FoiVector foi;            // Frb
    double rab_delta_f_hz = 0.0; // Rab

    static Beamformer fab();
    static Beamformer rab(double delta_f_hz);
    static Beamformer frb(FoiVector foi);

    BeamSample gain(const ArrayGeometry& geom, const FieldPoint& point,
                    const FieldPoint& target) const;
    /// Region of the point under this beam's own strip partition. FAB and RAB
    /// have a single strip, so they never report Mixed.
    Region region(const ArrayGeometry& geom, const FieldPoint& point,
                  const FieldPoint& target) const;
    bool in_main_region(const ArrayGeometry& geom, const FieldPoint& point,
                        const FieldPoint& target) const;
};

/// Secrecy rate with Eve at `eve` and Bob at `target`.
double secrecy_rate_at(const ArrayGeometry& geom, const Beamformer& beam, const FieldPoint& target,
                       const FieldPoint& eve, const LinkBudget& link);

struct GridSpec {
    double theta_min_deg = 0.0;
    double theta_max_deg = 179.0;
    double theta_step_deg = 0.5;
    double range_min_m = 50.0;
    double range_max_m = 1000.0;
    double range_step_m = 5.0;

    static GridSpec default_for(const FieldPoint& target);
    void validate() const;
    std::vector<double> theta_values() const;
    std::vector<double> range_values() const;
};

/// Row-major (theta-major) grid of secrecy rates with Eve at each cell.
struct SrGrid {
    std::vector<double> theta_deg;
    std::vector<double> range_m;
    std::vector<double> sr;
    /// Cells of the mainlobe region next to Bob, left out of outage statistics.
    std::vector<bool> excluded;

    std::size_t index(std::size_t i_theta, std::size_t j_range) const
    {
        return i_theta * range_m.size() + j_range;
    }
    double at(std::size_t i_theta, std::size_t j_range) const { return sr[index(i_theta, j_range)]; }
};

SrGrid sr_map(const ArrayGeometry& geom, const Beamformer& beam, const FieldPoint& target,
              const LinkBudget& link, const GridSpec& grid);

/// Eve trajectories for SR profiles: fixed range (T12), along the RAB mainlobe
/// line (T13), fixed angle (T14).
enum class Trajectory { T12, T13, T14 };

struct ProfileSpec {
    Trajectory trajectory = Trajectory::T14;
    double fixed_range_m = 380.0;
    double fixed_theta_deg = 90.0;
    double locus_delta_f_hz = 0.0; // required for T13
    GridSpec sweep;                // theta sweep for T12/T13, range sweep for T14
};

struct ProfileRow {
    double parameter = 0.0;
    double theta_deg = 0.0;
    double range_m = 0.0;
    double sr_bits = 0.0;
    bool in_main_region = false;
};

std::vector<ProfileRow> sr_profile(const ArrayGeometry& geom, const Beamformer& beam,
                                   const FieldPoint& target, const LinkBudget& link,
                                   const ProfileSpec& spec);

/// Fraction of non-excluded cells with secrecy rate strictly below gamma.
double secrecy_outage_probability(const SrGrid& grid, double gamma_bits);

/// Mean SR over the angle axis for each range row.
std::vector<double> angle_averaged_sr(const SrGrid& grid);
/// Mean SR over the whole grid.
double angle_range_averaged_sr(const SrGrid& grid);

/// W_FRB / W_FAB = 1 - delta_f_max / (W_FAB / 2).
double relative_bandwidth(double max_offset_hz, double fab_bandwidth_hz);

} // namespace fdsa
