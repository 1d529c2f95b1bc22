// SPDX-License-Identifier: Apache-2.0
#include "fdsa/beam_geometry.hpp"

#include "detail/kernel.hpp"
#include "fdsa/error.hpp"
#include "fdsa/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

namespace fdsa {

namespace {

struct Probe {
    double power = 0.0;
    std::size_t strips = 0;
};

// One pass over the subarrays computing both |B|^2 and the strip count.
Probe probe(const ArrayGeometry& geom, std::span<const double> offsets, const KernelArgs& args)
{
    const std::size_t order = geom.elements_per_subarray;
    const double n = static_cast<double>(order);
    const double half_width = kPi / n;
    const std::size_t m_count = offsets.size();
    const std::complex<double> step = std::polar(1.0, -2.0 * n * args.a);
    std::complex<double> phase = std::polar(1.0, (static_cast<double>(m_count) - 1.0) * n * args.a);
    std::complex<double> sum{0.0, 0.0};
    Probe out;
    for (std::size_t m = 0; m < m_count; ++m) {
        double principal = 0.0;
        const double g = detail::reduced_kernel(order, args.a - args.b * offsets[m], principal);
        if (std::abs(principal) < half_width) {
            ++out.strips;
        }
        sum += phase * g;
        phase *= step;
    }
    out.power = std::norm(sum / static_cast<double>(m_count));
    return out;
}

double max_abs_offset(std::span<const double> offsets)
{
    double worst = 0.0;
    for (double f : offsets) {
        worst = std::max(worst, std::abs(f));
    }
    return worst;
}

double lattice_step(const ArrayGeometry& geom)
{
    const double lambda_over_nd =
        geom.wavelength_m() / (static_cast<double>(geom.elements_per_subarray) * geom.spacing_m);
    return geom.subarrays % 2 == 1 ? lambda_over_nd : 0.5 * lambda_over_nd;
}

// Search window expressed in absolute (cos theta, R) coordinates.
struct Window {
    double cos_lo;
    double cos_hi;
    double range_lo;
    double range_hi;

    bool contains(double c, double r) const
    {
        return c >= cos_lo && c <= cos_hi && r >= range_lo && r <= range_hi;
    }
};

Window window_of(const SearchSettings& s)
{
    return {std::cos(deg_to_rad(s.theta_max_deg)), std::cos(deg_to_rad(s.theta_min_deg)),
            s.range_min_m, s.range_max_m};
}

struct Seed {
    double power;
    double cos_theta;
    double range_m;
};

class SidelobeSearch {
public:
    SidelobeSearch(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& target,
                   const SearchSettings& settings)
        : geom_(geom), foi_(foi), offsets_(foi.offsets()), target_(target), settings_(settings),
          window_(window_of(settings)), cos_target_(std::cos(target.theta_rad))
    {
        const double spread = max_abs_offset(offsets_);
        const double span = window_.range_hi - window_.range_lo;
        cos_step0_ = 0.5 * lattice_step(geom);
        if (spread > 0.0) {
            const double cell =
                kSpeedOfLight / (static_cast<double>(geom.elements_per_subarray) * spread);
            range_step0_ = 0.5 * std::min(cell, span);
        } else {
            range_step0_ = settings.safety_range_step_m;
        }
        range_step0_ = std::max(range_step0_, 1e-6);
    }

    KernelArgs args_at(double c, double r) const
    {
        return kernel_args(geom_, PlaneOffset{c - cos_target_, r - target_.range_m});
    }

    // Power at an absolute location, or a negative value when the location is
    // outside the window or inside the mainlobe cell.
    double sidelobe_power(double c, double r) const
    {
        if (!window_.contains(c, r)) {
            return -1.0;
        }
        const auto p = probe(geom_, offsets_, args_at(c, r));
        if (p.strips == offsets_.size()) {
            return -1.0;
        }
        return p.power;
    }

    Seed refine(Seed seed) const
    {
        double dc = cos_step0_;
        double dr = range_step0_;
        const double stop_c = 1e-4 * cos_step0_;
        const double stop_r = 1e-4 * range_step0_;
        while (dc >= stop_c || dr >= stop_r) {
            for (int guard = 0; guard < 64; ++guard) {
                Seed best = seed;
                for (int i = -1; i <= 1; ++i) {
                    for (int j = -1; j <= 1; ++j) {
                        if (i == 0 && j == 0) {
                            continue;
                        }
                        const double c = seed.cos_theta + i * dc;
                        const double r = seed.range_m + j * dr;
                        const double p = sidelobe_power(c, r);
                        if (p > best.power) {
                            best = {p, c, r};
                        }
                    }
                }
                if (best.power <= seed.power) {
                    break;
                }
                seed = best;
            }
            dc *= 0.5;
            dr *= 0.5;
        }
        return seed;
    }

    std::vector<Seed> candidate_seeds() const
    {
        std::vector<Seed> seeds;
        for (const auto& cand : sidelobe_candidates(geom_, foi_, target_, settings_)) {
            const double p = sidelobe_power(cand.cos_theta, cand.range_m);
            if (p >= 0.0) {
                seeds.push_back({p, cand.cos_theta, cand.range_m});
            }
        }
        for (const auto& [c, r] : crossing_points()) {
            const double p = sidelobe_power(c, r);
            if (p >= 0.0) {
                seeds.push_back({p, c, r});
            }
        }
        return seeds;
    }

    // Off-lattice starts: pairwise crossings of subbeam mainlobe lines
    // x_m = k pi, crossings of those lines with the window edges, and the
    // window corners. Line (m, k): f_c d dcos - dR f_m = k c.
    std::vector<std::pair<double, double>> crossing_points() const
    {
        const double fcd = geom_.carrier_spacing();
        const double dc_lo = window_.cos_lo - cos_target_;
        const double dc_hi = window_.cos_hi - cos_target_;
        const double dr_lo = window_.range_lo - target_.range_m;
        const double dr_hi = window_.range_hi - target_.range_m;
        const auto wraps = [&](double f) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (double dc : {dc_lo, dc_hi}) {
                for (double dr : {dr_lo, dr_hi}) {
                    const double k = (fcd * dc - dr * f) / kSpeedOfLight;
                    lo = std::min(lo, k);
                    hi = std::max(hi, k);
                }
            }
            return std::pair<long, long>{static_cast<long>(std::ceil(lo)),
                                         static_cast<long>(std::floor(hi))};
        };
        std::vector<std::pair<double, double>> out;
        const auto add = [&](double dc, double dr) {
            out.emplace_back(cos_target_ + dc, target_.range_m + dr);
        };
        for (double dc : {dc_lo, dc_hi}) {
            for (double dr : {dr_lo, dr_hi}) {
                add(dc, dr);
            }
        }
        const std::size_t m_count = offsets_.size();
        for (std::size_t m = 0; m < m_count; ++m) {
            const double fm = offsets_[m];
            const auto [k_lo, k_hi] = wraps(fm);
            for (long k = k_lo; k <= k_hi; ++k) {
                const double kc = static_cast<double>(k) * kSpeedOfLight;
                for (double dr : {dr_lo, dr_hi}) {
                    add((kc + dr * fm) / fcd, dr);
                }
                if (fm != 0.0) {
                    for (double dc : {dc_lo, dc_hi}) {
                        add(dc, (fcd * dc - kc) / fm);
                    }
                }
                for (std::size_t n = m + 1; n < m_count; ++n) {
                    const double fn = offsets_[n];
                    if (fn == fm) {
                        continue;
                    }
                    const auto [l_lo, l_hi] = wraps(fn);
                    for (long l = l_lo; l <= l_hi; ++l) {
                        const double dr = static_cast<double>(k - l) * kSpeedOfLight / (fn - fm);
                        add((kc + dr * fm) / fcd, dr);
                    }
                }
            }
        }
        return out;
    }

    std::vector<Seed> grid_seeds() const
    {
        std::vector<Seed> seeds;
        const double t_step = settings_.safety_theta_step_deg;
        const double r_step = settings_.safety_range_step_m;
        const auto t_count = static_cast<std::size_t>(
            std::floor((settings_.theta_max_deg - settings_.theta_min_deg) / t_step + 1e-9)) + 1;
        const auto r_count = static_cast<std::size_t>(
            std::floor((settings_.range_max_m - settings_.range_min_m) / r_step + 1e-9)) + 1;
        seeds.reserve(t_count * r_count);
        for (std::size_t i = 0; i < t_count; ++i) {
            const double c = std::cos(deg_to_rad(settings_.theta_min_deg + i * t_step));
            for (std::size_t j = 0; j < r_count; ++j) {
                const double r = settings_.range_min_m + j * r_step;
                const double p = sidelobe_power(c, r);
                if (p >= 0.0) {
                    seeds.push_back({p, c, r});
                }
            }
        }
        return seeds;
    }

private:
    const ArrayGeometry& geom_;
    const FoiVector& foi_;
    std::span<const double> offsets_;
    FieldPoint target_;
    SearchSettings settings_;
    Window window_;
    double cos_target_;
    double cos_step0_ = 0.0;
    double range_step0_ = 0.0;
};

void keep_top(std::vector<Seed>& seeds, std::size_t count)
{
    const auto k = std::min(count, seeds.size());
    std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(k), seeds.end(),
                      [](const Seed& x, const Seed& y) { return x.power > y.power; });
    seeds.resize(k);
}

} // namespace

std::string_view region_name(Region region)
{
    switch (region) {
    case Region::Main:
        return "main";
    case Region::Mixed:
        return "mixed";
    case Region::Sidelobe:
        return "sidelobe";
    }
    return "unknown";
}

double rotated_angle(const ArrayGeometry& geom, double delta_f_hz)
{
    if (delta_f_hz == 0.0) {
        return 0.5 * kPi;
    }
    return std::atan(geom.carrier_spacing() / delta_f_hz);
}

double mainlobe_locus_range(const ArrayGeometry& geom, double delta_f_hz, double cos_offset)
{
    if (delta_f_hz == 0.0) {
        throw DegenerateLocus();
    }
    return geom.carrier_spacing() / delta_f_hz * cos_offset;
}

std::size_t covering_strips(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                            const KernelArgs& args)
{
    const double half_width = kPi / static_cast<double>(geom.elements_per_subarray);
    std::size_t count = 0;
    for (double f : offsets_hz) {
        const double x = args.a - args.b * f;
        const double principal = x - std::nearbyint(x / kPi) * kPi;
        if (std::abs(principal) < half_width) {
            ++count;
        }
    }
    return count;
}

Region classify_args(const ArrayGeometry& geom, std::span<const double> offsets_hz,
                     const KernelArgs& args)
{
    const auto strips = covering_strips(geom, offsets_hz, args);
    if (strips == offsets_hz.size()) {
        return Region::Main;
    }
    return strips == 0 ? Region::Sidelobe : Region::Mixed;
}

Region classify_region(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& point,
                       const FieldPoint& target)
{
    return classify_args(geom, foi.offsets(), kernel_args(geom, point, target));
}

SearchSettings SearchSettings::around(const FieldPoint& target)
{
    SearchSettings s;
    s.range_min_m = std::min(50.0, target.range_m);
    s.range_max_m = 2.0 * target.range_m;
    s.safety_range_step_m = target.range_m / 100.0;
    return s;
}

void SearchSettings::validate() const
{
    if (!(theta_min_deg >= 0.0 && theta_max_deg <= 180.0 && theta_min_deg <= theta_max_deg)) {
        throw DomainError("search angle window must satisfy 0 <= min <= max <= 180 deg");
    }
    if (!(range_min_m > 0.0 && range_min_m <= range_max_m)) {
        throw DomainError("search range window must satisfy 0 < min <= max");
    }
    if (!(safety_theta_step_deg > 0.0 && safety_range_step_m > 0.0)) {
        throw DomainError("search grid steps must be positive");
    }
}

std::vector<PeakCandidate> sidelobe_candidates(const ArrayGeometry& geom, const FoiVector& foi,
                                               const FieldPoint& target,
                                               const SearchSettings& settings)
{
    settings.validate();
    const Window window = window_of(settings);
    const double cos_target = std::cos(target.theta_rad);
    const double step = lattice_step(geom);
    const double dr_lo = window.range_lo - target.range_m;
    const double dr_hi = window.range_hi - target.range_m;
    const double fcd = geom.carrier_spacing();

    const auto n_lo = static_cast<long>(std::ceil((window.cos_lo - cos_target) / step - 1e-12));
    const auto n_hi = static_cast<long>(std::floor((window.cos_hi - cos_target) / step + 1e-12));

    std::vector<PeakCandidate> out;
    bool zero_ray_done = false;
    for (std::size_t m = 0; m < foi.size(); ++m) {
        const double df = foi[m];
        if (df == 0.0) {
            // The subbeam ridge is the target direction itself; sample it in range.
            if (zero_ray_done || cos_target < window.cos_lo || cos_target > window.cos_hi) {
                continue;
            }
            zero_ray_done = true;
            for (double r = window.range_lo; r <= window.range_hi + 1e-9;
                 r += settings.safety_range_step_m) {
                out.push_back({cos_target, r, true, 0, m, 0});
            }
            continue;
        }
        for (long n = n_lo; n <= n_hi; ++n) {
            const double dcos = static_cast<double>(n) * step;
            // Every mainlobe line x_m = k pi crossing this lattice column in the window;
            // k = 0 is the line through the target.
            const double k_a = (fcd * dcos - dr_lo * df) / kSpeedOfLight;
            const double k_b = (fcd * dcos - dr_hi * df) / kSpeedOfLight;
            const auto k_lo = static_cast<long>(std::ceil(std::min(k_a, k_b) - 1e-12));
            const auto k_hi = static_cast<long>(std::floor(std::max(k_a, k_b) + 1e-12));
            for (long k = k_lo; k <= k_hi; ++k) {
                const double dr = (fcd * dcos - static_cast<double>(k) * kSpeedOfLight) / df;
                out.push_back({cos_target + dcos, target.range_m + dr, false, static_cast<int>(n),
                               m, static_cast<int>(k)});
            }
        }
        // Where this subbeam's first nulls cut the target column: edges of the mainlobe cell.
        if (cos_target >= window.cos_lo && cos_target <= window.cos_hi) {
            const double exit =
                kSpeedOfLight / (static_cast<double>(geom.elements_per_subarray) * std::abs(df));
            for (double dr : {-exit, exit}) {
                if (dr >= dr_lo && dr <= dr_hi) {
                    out.push_back({cos_target, target.range_m + dr, false, 0, m, 0});
                }
            }
        }
    }
    return out;
}

bool is_antisymmetric(const FoiVector& foi)
{
    const std::size_t m_count = foi.size();
    const double tol = 1e-12 * std::max(1.0, foi.max_offset_hz());
    for (std::size_t m = 0; m < m_count; ++m) {
        if (std::abs(foi[m] + foi[m_count - 1 - m]) > tol) {
            return false;
        }
    }
    return true;
}

PlaneOffset fold_quadrant(const FoiVector& foi, const PlaneOffset& offset)
{
    if (!is_antisymmetric(foi)) {
        throw FoldingInvalid();
    }
    return {std::abs(offset.cos_offset), std::abs(offset.range_offset)};
}

SidelobePeak max_sidelobe(const ArrayGeometry& geom, const FoiVector& foi, const FieldPoint& target,
                          const SearchSettings& settings)
{
    settings.validate();
    if (foi.size() != geom.subarrays) {
        throw DomainError("FOI vector length does not match subarray count");
    }
    if (!settings.use_candidates && !settings.use_safety_grid) {
        throw DomainError("sidelobe search needs candidates or a safety grid");
    }
    const SidelobeSearch search(geom, foi, target, settings);

    std::vector<Seed> starts;
    if (settings.use_candidates) {
        auto seeds = search.candidate_seeds();
        keep_top(seeds, settings.refine_count);
        starts.insert(starts.end(), seeds.begin(), seeds.end());
    }
    if (settings.use_safety_grid) {
        auto seeds = search.grid_seeds();
        keep_top(seeds, settings.refine_count);
        starts.insert(starts.end(), seeds.begin(), seeds.end());
    }
    if (starts.empty()) {
        throw DomainError("search window contains no point outside the mainlobe cell");
    }

    Seed best{-1.0, 0.0, 0.0};
    for (const auto& s : starts) {
        const Seed refined = search.refine(s);
        if (refined.power > best.power) {
            best = refined;
        }
    }
    SidelobePeak peak;
    peak.power = best.power;
    peak.location = FieldPoint{std::acos(std::clamp(best.cos_theta, -1.0, 1.0)), best.range_m};
    peak.region = classify_args(geom, foi.offsets(), search.args_at(best.cos_theta, best.range_m));
    return peak;
}

} // namespace fdsa
