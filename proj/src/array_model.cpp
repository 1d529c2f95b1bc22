// SPDX-License-Identifier: Apache-2.0
#include "fdsa/array_model.hpp"

#include "detail/kernel.hpp"
#include "fdsa/error.hpp"
#include "fdsa/units.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fdsa {

namespace {

void require_model_validity(const ArrayGeometry& geom, const FoiVector& foi)
{
    if (foi.size() != geom.subarrays) {
        throw DomainError("FOI vector length " + std::to_string(foi.size()) +
                          " does not match subarray count " + std::to_string(geom.subarrays));
    }
    // Narrowband FDA approximation: the offsets must stay tiny against the carrier.
    if (foi.max_offset_hz() >= 1e-2 * geom.carrier_hz) {
        throw DomainError("max FOI must be much smaller than the carrier frequency");
    }
}

} // namespace

ArrayGeometry ArrayGeometry::make(double carrier_hz, double spacing_m, std::size_t subarrays,
                                  std::size_t elements_per_subarray)
{
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) {
        throw DomainError("carrier frequency must be positive");
    }
    if (!(spacing_m > 0.0)) {
        throw DomainError("element spacing must be positive");
    }
    if (subarrays == 0 || elements_per_subarray == 0) {
        throw DomainError("subarray and element counts must be at least 1");
    }
    const double half_lambda = 0.5 * kSpeedOfLight / carrier_hz;
    if (spacing_m > half_lambda * (1.0 + 1e-3)) { // 0.1% slack admits 2.5 mm at 60 GHz
        throw DomainError("element spacing exceeds half a wavelength (grating lobes)");
    }
    return ArrayGeometry{carrier_hz, spacing_m, subarrays, elements_per_subarray};
}

ArrayGeometry ArrayGeometry::half_wavelength(double carrier_hz, std::size_t subarrays,
                                             std::size_t elements_per_subarray)
{
    if (!(carrier_hz > 0.0)) {
        throw DomainError("carrier frequency must be positive");
    }
    return make(carrier_hz, 0.5 * kSpeedOfLight / carrier_hz, subarrays, elements_per_subarray);
}

double ArrayGeometry::wavelength_m() const { return kSpeedOfLight / carrier_hz; }

FoiVector::FoiVector(std::vector<double> offsets_hz, double max_offset_hz)
    : offsets_(std::move(offsets_hz)), max_offset_(max_offset_hz)
{
    if (!(max_offset_ >= 0.0) || !std::isfinite(max_offset_)) {
        throw DomainError("max FOI bound must be a non-negative finite value");
    }
    for (std::size_t m = 0; m < offsets_.size(); ++m) {
        if (!std::isfinite(offsets_[m]) || std::abs(offsets_[m]) > max_offset_) {
            throw DomainError("FOI " + std::to_string(m) + " violates |delta_f| <= delta_f_max");
        }
    }
}

FoiVector FoiVector::zeros(std::size_t subarrays, double max_offset_hz)
{
    return FoiVector(std::vector<double>(subarrays, 0.0), max_offset_hz);
}

FoiVector FoiVector::with(std::size_t m, double offset_hz) const
{
    auto copy = offsets_;
    copy.at(m) = offset_hz;
    return FoiVector(std::move(copy), max_offset_);
}

FieldPoint FieldPoint::make(double theta_rad, double range_m)
{
    if (!(theta_rad >= 0.0 && theta_rad <= kPi)) {
        throw DomainError("theta must lie in [0, pi]");
    }
    if (!(range_m > 0.0)) {
        throw DomainError("range must be positive");
    }
    return FieldPoint{theta_rad, range_m};
}

FieldPoint FieldPoint::from_degrees(double theta_deg, double range_m)
{
    return make(deg_to_rad(theta_deg), range_m);
}

PlaneOffset offset_between(const FieldPoint& point, const FieldPoint& target)
{
    return {std::cos(point.theta_rad) - std::cos(target.theta_rad), point.range_m - target.range_m};
}

KernelArgs kernel_args(const ArrayGeometry& geom, const PlaneOffset& offset)
{
    return {kPi * geom.carrier_spacing() * offset.cos_offset / kSpeedOfLight,
            kPi * offset.range_offset / kSpeedOfLight};
}

KernelArgs kernel_args(const ArrayGeometry& geom, const FieldPoint& point, const FieldPoint& target)
{
    return kernel_args(geom, offset_between(point, target));
}

double dirichlet_kernel(std::size_t order, double x)
{
    double principal = 0.0;
    return detail::reduced_kernel(order, x, principal);
}

double element_frequency(const ArrayGeometry& geom, const FoiVector& foi, std::size_t m,
                         std::size_t n)
{
    if (m >= geom.subarrays || m >= foi.size() || n >= geom.elements_per_subarray) {
        throw DomainError("element index out of bounds");
    }
    const double centre = 0.5 * (static_cast<double>(geom.elements_per_subarray) - 1.0);
    return geom.carrier_hz - (centre - static_cast<double>(n)) * foi[m];
}

BeamSample fab_gain(const ArrayGeometry& geom, std::size_t total_elements, const FieldPoint& point,
                    const FieldPoint& target)
{
    if (total_elements == 0) {
        throw DomainError("FAB needs at least one element");
    }
    const auto args = kernel_args(geom, point, target);
    return BeamSample::of(dirichlet_kernel(total_elements, args.a));
}

BeamSample rab_gain(const ArrayGeometry& geom, std::size_t total_elements, double delta_f_hz,
                    const FieldPoint& point, const FieldPoint& target)
{
    if (total_elements == 0) {
        throw DomainError("RAB needs at least one element");
    }
    const auto args = kernel_args(geom, point, target);
    return BeamSample::of(dirichlet_kernel(total_elements, args.a - args.b * delta_f_hz));
}

double subbeam_gain(std::size_t elements, double delta_f_hz, const KernelArgs& args)
{
    return dirichlet_kernel(elements, args.a - args.b * delta_f_hz);
}

double subbeam_gain(const ArrayGeometry& geom, double delta_f_hz, const FieldPoint& point,
                    const FieldPoint& target)
{
    return subbeam_gain(geom.elements_per_subarray, delta_f_hz, kernel_args(geom, point, target));
}

std::complex<double> frb_value(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                               const KernelArgs& args)
{
    const std::size_t m_count = offsets_hz.size();
    const double n = static_cast<double>(geom.elements_per_subarray);
    // Phase factors exp(j (M-1-2m) N a), stepped by exp(-j 2 N a).
    const std::complex<double> step = std::polar(1.0, -2.0 * n * args.a);
    std::complex<double> phase =
        std::polar(1.0, (static_cast<double>(m_count) - 1.0) * n * args.a);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t m = 0; m < m_count; ++m) {
        sum += phase * subbeam_gain(geom.elements_per_subarray, offsets_hz[m], args);
        phase *= step;
    }
    return sum / static_cast<double>(m_count);
}

double frb_power(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                 const KernelArgs& args)
{
    return std::norm(frb_value(geom, offsets_hz, args));
}

BeamSample frb_gain(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& point,
                    const FieldPoint& target)
{
    require_model_validity(geom, foi);
    return BeamSample::of(frb_value(geom, foi.offsets(), kernel_args(geom, point, target)));
}

double frb_power_expansion(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& point,
                           const FieldPoint& target)
{
    require_model_validity(geom, foi);
    const auto args = kernel_args(geom, point, target);
    const std::size_t m_count = foi.size();
    const double n = static_cast<double>(geom.elements_per_subarray);
    std::vector<double> g(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        g[m] = subbeam_gain(geom.elements_per_subarray, foi[m], args);
    }
    double total = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        for (std::size_t k = 0; k < m_count; ++k) {
            const double lag = static_cast<double>(k) - static_cast<double>(m);
            total += std::cos(2.0 * n * args.a * lag) * g[m] * g[k];
        }
    }
    const double mm = static_cast<double>(m_count);
    return total / (mm * mm);
}

double neglected_phase_term(const ArrayGeometry& geom, const FoiVector& foi,
                            const FieldPoint& point)
{
    require_model_validity(geom, foi);
    const double cos_theta = std::cos(point.theta_rad);
    const double m_centre = 0.5 * (static_cast<double>(geom.subarrays) - 1.0);
    const double n_centre = 0.5 * (static_cast<double>(geom.elements_per_subarray) - 1.0);
    const double n_count = static_cast<double>(geom.elements_per_subarray);
    double worst = 0.0;
    for (std::size_t m = 0; m < geom.subarrays; ++m) {
        const double mu = m_centre - static_cast<double>(m);
        for (std::size_t e = 0; e < geom.elements_per_subarray; ++e) {
            const double nu = n_centre - static_cast<double>(e);
            const double term = 2.0 * kPi * foi[m] * geom.spacing_m * cos_theta * nu *
                                (mu * n_count + nu) / kSpeedOfLight;
            worst = std::max(worst, std::abs(term));
        }
    }
    return worst;
}

} // namespace fdsa
