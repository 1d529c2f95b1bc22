// SPDX-License-Identifier: Apache-2.0
//
// Far-field array factors of a uniform linear array split into M frequency
// diverse subarrays of N elements each:
//
//   FAB  conventional phased array, angle-only beam
//   RAB  single-FOI frequency diverse array, beam tilted in the (cos, R) plane
//   FRB  per-subarray FOIs, beam confined to a cell around the target
//
// Angles are measured from the array axis, so every pattern depends on the
// angle through cos(theta) only. SI units throughout (Hz, m, rad).
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fdsa {

struct ArrayGeometry {
    double carrier_hz = 0.0;
    double spacing_m = 0.0;
    std::size_t subarrays = 1;
    std::size_t elements_per_subarray = 1;

    /// Validating constructor; throws DomainError when spacing exceeds half a
    /// wavelength or either count is zero.
    static ArrayGeometry make(double carrier_hz, double spacing_m, std::size_t subarrays,
                              std::size_t elements_per_subarray);
    static ArrayGeometry half_wavelength(double carrier_hz, std::size_t subarrays,
                                         std::size_t elements_per_subarray);

    double wavelength_m() const;
    std::size_t total_elements() const { return subarrays * elements_per_subarray; }
    /// f_c * d, the numerator of the rotation slope.
    double carrier_spacing() const { return carrier_hz * spacing_m; }
};

/// Per-subarray frequency offset increments with their common bound.
class FoiVector {
public:
    FoiVector() = default;
    /// Throws DomainError if any |offset| exceeds max_offset_hz or the bound is negative.
    FoiVector(std::vector<double> offsets_hz, double max_offset_hz);

    static FoiVector zeros(std::size_t subarrays, double max_offset_hz = 0.0);

    std::span<const double> offsets() const { return offsets_; }
    double operator[](std::size_t m) const { return offsets_[m]; }
    std::size_t size() const { return offsets_.size(); }
    double max_offset_hz() const { return max_offset_; }

    /// Returns a copy with offset m replaced; throws if the bound is violated.
    FoiVector with(std::size_t m, double offset_hz) const;

    friend bool operator==(const FoiVector&, const FoiVector&) = default;

private:
    std::vector<double> offsets_;
    double max_offset_ = 0.0;
};

struct FieldPoint {
    double theta_rad = 0.0;
    double range_m = 1.0;

    /// theta in [0, pi], range strictly positive.
    static FieldPoint make(double theta_rad, double range_m);
    static FieldPoint from_degrees(double theta_deg, double range_m);
};

/// Location relative to the target in the (cos theta, R) plane.
struct PlaneOffset {
    double cos_offset = 0.0;
    double range_offset = 0.0;
};

PlaneOffset offset_between(const FieldPoint& point, const FieldPoint& target);

struct BeamSample {
    std::complex<double> value;
    double power = 0.0;

    static BeamSample of(std::complex<double> v) { return {v, std::norm(v)}; }
};

/// The two phase arguments shared by every pattern:
///   a = pi f_c d (cos theta - cos theta_T) / c,  b = pi (R - R_T) / c.
struct KernelArgs {
    double a = 0.0;
    double b = 0.0;
};

KernelArgs kernel_args(const ArrayGeometry& geom, const PlaneOffset& offset);
KernelArgs kernel_args(const ArrayGeometry& geom, const FieldPoint& point, const FieldPoint& target);

/// sin(order x) / (order sin x), with the exact limit (-1)^{k(order-1)} at x = k pi.
double dirichlet_kernel(std::size_t order, double x);

double element_frequency(const ArrayGeometry& geom, const FoiVector& foi, std::size_t m,
                         std::size_t n);

BeamSample fab_gain(const ArrayGeometry& geom, std::size_t total_elements, const FieldPoint& point,
                    const FieldPoint& target);

BeamSample rab_gain(const ArrayGeometry& geom, std::size_t total_elements, double delta_f_hz,
                    const FieldPoint& point, const FieldPoint& target);

/// Normalized pattern g(delta_f) of one N-element subarray.
double subbeam_gain(const ArrayGeometry& geom, double delta_f_hz, const FieldPoint& point,
                    const FieldPoint& target);
double subbeam_gain(std::size_t elements, double delta_f_hz, const KernelArgs& args);

BeamSample frb_gain(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& point,
                    const FieldPoint& target);

/// Hot-path FRB evaluation on raw offsets; no validation.
std::complex<double> frb_value(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                               const KernelArgs& args);
double frb_power(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                 const KernelArgs& args);

/// |B_FRB|^2 through the real double-sum cos(2Na(n-m)) g_m g_n / M^2.
double frb_power_expansion(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& point,
                           const FieldPoint& target);

/// Largest magnitude (rad) of the quadratic cross term that the FRB model
/// neglects in the per-element phase, over all elements, at `point`.
double neglected_phase_term(const ArrayGeometry& geom, const FoiVector& foi,
                            const FieldPoint& point);

} // namespace fdsa
