// SPDX-License-Identifier: Apache-2.0
//
// Geometric structure of FRB patterns in the (cos theta, R) plane: the rotated
// subbeam mainlobe lines, the three-way region partition, sidelobe peak
// candidates and the maximum-sidelobe search.
#pragma once

#include "fdsa/array_model.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fdsa {

/// Region partition by how many subbeam mainlobe strips cover a point.
enum class Region {
    Main,     // every strip: the confined mainlobe cell around the target
    Mixed,    // some but not all strips
    Sidelobe, // no strip
};

std::string_view region_name(Region region);

/// Angle between a subbeam's mainlobe line and the cos-axis: atan(f_c d / delta_f).
/// A zero offset gives pi/2 (vertical line, range independent).
double rotated_angle(const ArrayGeometry& geom, double delta_f_hz);

/// Range offset R - R_T of the mainlobe line at the given cos offset.
/// Throws DegenerateLocus for delta_f = 0.
double mainlobe_locus_range(const ArrayGeometry& geom, double delta_f_hz, double cos_offset);

/// Number of subarrays whose mainlobe strip |x_m mod pi| < pi/N contains the point.
std::size_t covering_strips(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                            const KernelArgs& args);
Region classify_args(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                     const KernelArgs& args);
Region classify_region(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& point,
                       const FieldPoint& target);

struct PeakCandidate {
    double cos_theta = 0.0;    // absolute cos(theta)
    double range_m = 0.0;      // absolute range
    bool unbounded_range = false; // sampled along a zero-FOI ray
    int lattice_index = 0;     // n of the cos lattice
    std::size_t subarray = 0;  // m whose mainlobe line generated the point
    int wrap = 0;              // range ambiguity order of that line (0 = through the target)
};

/// Window and resolution used by the sidelobe search.
struct SearchSettings {
    double theta_min_deg = 0.0;
    double theta_max_deg = 180.0;
    double range_min_m = 50.0;
    double range_max_m = 1000.0;
    double safety_theta_step_deg = 1.0;
    double safety_range_step_m = 5.0;
    std::size_t refine_count = 64; // best seeds of each stage that get refined
    bool use_candidates = true;
    bool use_safety_grid = true;

    /// Range window [50 m, 2 R_T] and a 1 deg x R_T/100 safety grid.
    static SearchSettings around(const FieldPoint& target);
    /// Throws DomainError on an empty window or non-positive steps.
    void validate() const;
};

/// Lattice points where the phase shift factors are +-1 and one subbeam
/// mainlobe line crosses, restricted to the search window.
std::vector<PeakCandidate> sidelobe_candidates(const ArrayGeometry& geom, const FoiVector& foi,
                                               const FieldPoint& target,
                                               const SearchSettings& settings);

bool is_antisymmetric(const FoiVector& foi);

/// Maps an offset to (|dcos|, |dR|). Valid only for antisymmetric FOI vectors,
/// for which |B| is identical at all four mirror images; throws FoldingInvalid otherwise.
PlaneOffset fold_quadrant(const FoiVector& foi, const PlaneOffset& offset);

struct SidelobePeak {
    double power = 0.0;
    FieldPoint location;
    Region region = Region::Sidelobe;
};

/// Maximum of |B_FRB|^2 outside the Main region over the search window.
/// Seeds are the lattice candidates, pairwise crossings of subbeam mainlobe
/// lines, their crossings with the window edges and the window corners; the
/// best refine_count of those and of the safety grid are refined.
SidelobePeak max_sidelobe(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& target,
                          const SearchSettings& settings);

} // namespace fdsa
