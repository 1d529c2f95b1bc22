// SPDX-License-Identifier: Apache-2.0
#include "fdsa/bcdla_optimizer.hpp"

#include "fdsa/error.hpp"
#include "fdsa/random.hpp"
#include "fdsa/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdsa {

namespace {

constexpr double kGolden = 0.6180339887498949;

double gain_at(std::size_t elements, const KernelArgs& args, double delta_f)
{
    return dirichlet_kernel(elements, args.a - args.b * delta_f);
}

// Kernel lobe width in delta_f.
double lobe_width(std::size_t elements, const KernelArgs& args)
{
    return kPi / (static_cast<double>(elements) * std::abs(args.b));
}

// Golden-section minimization of f on [lo, hi] down to `tol`.
template <class F> double golden_min(F&& f, double lo, double hi, double tol)
{
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

// Uniform grid over [lo, hi] with at least 8 samples per kernel lobe.
std::size_t sample_count(double span, double lobe)
{
    const double wanted = std::ceil(8.0 * span / lobe);
    return static_cast<std::size_t>(std::clamp(wanted, 64.0, 1e7)) + 1;
}

// Extrema of g on [lo, hi] (sampled slightly beyond so edge extrema are seen).
std::vector<KernelPeak> peaks_between(std::size_t elements, const KernelArgs& args, double lo,
                                      double hi)
{
    std::vector<KernelPeak> out;
    if (elements == 1 || !(hi > lo)) {
        return out;
    }
    const double lobe = lobe_width(elements, args);
    const std::size_t count = sample_count(hi - lo, lobe);
    const double h = (hi - lo) / static_cast<double>(count - 1);
    const double start = lo - 2.0 * h;
    const std::size_t total = count + 4;
    std::vector<double> g(total);
    for (std::size_t i = 0; i < total; ++i) {
        g[i] = gain_at(elements, args, start + static_cast<double>(i) * h);
    }
    const double tol = 1e-12 * std::max({std::abs(lo), std::abs(hi), lobe});
    for (std::size_t i = 1; i + 1 < total; ++i) {
        const bool is_max = g[i] >= g[i - 1] && g[i] > g[i + 1] && g[i] > 0.0;
        const bool is_min = g[i] <= g[i - 1] && g[i] < g[i + 1] && g[i] < 0.0;
        if (!is_max && !is_min) {
            continue;
        }
        const double sense = is_max ? -1.0 : 1.0;
        const double left = start + static_cast<double>(i - 1) * h;
        const double f = golden_min(
            [&](double x) { return sense * gain_at(elements, args, x); }, left, left + 2.0 * h, tol);
        if (f < lo || f > hi) {
            continue;
        }
        const KernelPeak peak{f, gain_at(elements, args, f)};
        // Keep signs alternating.
        if (!out.empty() && (out.back().gain > 0.0) == (peak.gain > 0.0)) {
            if (std::abs(peak.gain) > std::abs(out.back().gain)) {
                out.back() = peak;
            }
            continue;
        }
        out.push_back(peak);
    }
    return out;
}

void require_varying(const KernelArgs& args)
{
    if (args.b == 0.0) {
        throw DegenerateObjective(
            "objective constant in delta_f: eavesdropper at the target range (b = 0)");
    }
}

bool improves(double candidate, double current)
{
    return candidate < current - 1e-12 * current;
}

} // namespace

KernelInterval KernelInterval::between(const KernelPeak& neg, const KernelPeak& pos)
{
    if (neg.delta_f_hz == pos.delta_f_hz || neg.gain == pos.gain) {
        throw DomainError("degenerate kernel interval: zero chord slope");
    }
    KernelInterval out{neg, pos, 0.0, 0.0};
    out.slope = (pos.gain - neg.gain) / (pos.delta_f_hz - neg.delta_f_hz);
    out.intercept = neg.gain - out.slope * neg.delta_f_hz;
    return out;
}

double KernelInterval::lo_hz() const { return std::min(neg.delta_f_hz, pos.delta_f_hz); }
double KernelInterval::hi_hz() const { return std::max(neg.delta_f_hz, pos.delta_f_hz); }

std::vector<KernelPeak> kernel_peaks(std::size_t elements, const KernelArgs& args, double bound_hz)
{
    require_varying(args);
    if (!(bound_hz >= 0.0)) {
        throw DomainError("FOI bound must be non-negative");
    }
    return peaks_between(elements, args, -bound_hz, bound_hz);
}

std::vector<KernelPeak> kernel_peaks(const ArrayGeometry& geom, const FieldPoint& eve,
                                     const FieldPoint& target, double bound_hz)
{
    return kernel_peaks(geom.elements_per_subarray, kernel_args(geom, eve, target), bound_hz);
}

GainRange attainable_gain(std::size_t elements, const KernelArgs& args, double bound_hz)
{
    const KernelPeak left{-bound_hz, gain_at(elements, args, -bound_hz)};
    const KernelPeak right{bound_hz, gain_at(elements, args, bound_hz)};
    GainRange out{left, left};
    auto consider = [&](const KernelPeak& p) {
        if (p.gain < out.min.gain) {
            out.min = p;
        }
        if (p.gain > out.max.gain) {
            out.max = p;
        }
    };
    consider(right);
    if (args.b != 0.0) {
        for (const auto& p : kernel_peaks(elements, args, bound_hz)) {
            consider(p);
        }
    }
    return out;
}

double block_target_unclamped(std::size_t elements, std::span<const double> offsets_hz,
                              std::size_t m, const KernelArgs& args, BlockRule rule)
{
    if (m >= offsets_hz.size()) {
        throw DomainError("block index out of range");
    }
    const double two_na = 2.0 * static_cast<double>(elements) * args.a;
    double sum = 0.0;
    for (std::size_t n = 0; n < offsets_hz.size(); ++n) {
        if (n == m) {
            continue;
        }
        const double lag = static_cast<double>(n) - static_cast<double>(m);
        sum += std::cos(two_na * lag) * gain_at(elements, args, offsets_hz[n]);
    }
    return rule == BlockRule::Halved ? -0.5 * sum : -sum;
}

double block_target(const ArrayGeometry& geom, const FoiVector& foi, std::size_t m,
                    const FieldPoint& eve, const FieldPoint& target, BlockRule rule)
{
    const auto args = kernel_args(geom, eve, target);
    if (args.a == 0.0 && args.b == 0.0) {
        throw DegenerateObjective("objective constant in delta_f_m: eavesdropper at the target");
    }
    const std::size_t n = geom.elements_per_subarray;
    const double raw = block_target_unclamped(n, foi.offsets(), m, args, rule);
    const auto range = attainable_gain(n, args, foi.max_offset_hz());
    return std::clamp(raw, range.min.gain, range.max.gain);
}

KernelInterval select_interval(std::span<const KernelPeak> peaks, double target_g,
                               double current_hz, double bound_hz)
{
    if (peaks.empty()) {
        throw TargetUnreachable();
    }
    auto distance = [](double x, double lo, double hi) {
        return x < lo ? lo - x : (x > hi ? x - hi : 0.0);
    };
    const KernelPeak* best_neg = nullptr;
    const KernelPeak* best_pos = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    double best_zero = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
        const KernelPeak& p = peaks[i];
        const KernelPeak& q = peaks[i + 1];
        if (p.gain == q.gain) {
            continue;
        }
        const double g_lo = std::min(p.gain, q.gain);
        const double g_hi = std::max(p.gain, q.gain);
        if (target_g < g_lo || target_g > g_hi) {
            continue;
        }
        const double lo = std::min(p.delta_f_hz, q.delta_f_hz);
        const double hi = std::max(p.delta_f_hz, q.delta_f_hz);
        if (hi < -bound_hz || lo > bound_hz) {
            continue;
        }
        const double d = distance(current_hz, lo, hi);
        const double z = distance(0.0, lo, hi);
        if (d < best_dist || (d == best_dist && z < best_zero)) {
            best_dist = d;
            best_zero = z;
            best_neg = p.gain < q.gain ? &p : &q;
            best_pos = p.gain < q.gain ? &q : &p;
        }
    }
    if (best_neg == nullptr) {
        throw TargetUnreachable();
    }
    return KernelInterval::between(*best_neg, *best_pos);
}

double invert_linear(const KernelInterval& interval, double target_g, double bound_hz)
{
    if (interval.slope == 0.0) {
        throw DomainError("degenerate kernel interval: zero chord slope");
    }
    return std::clamp((target_g - interval.intercept) / interval.slope, -bound_hz, bound_hz);
}

double solve_on_interval(std::size_t elements, const KernelArgs& args,
                         const KernelInterval& interval, double target_g, double bound_hz)
{
    const double chord = invert_linear(interval, target_g, bound_hz);
    double lo = interval.lo_hz();
    double hi = interval.hi_hz();
    auto residual = [&](double f) { return gain_at(elements, args, f) - target_g; };
    double r_lo = residual(lo);
    double r_hi = residual(hi);
    if (r_lo == 0.0) {
        return std::clamp(lo, -bound_hz, bound_hz);
    }
    if (r_hi == 0.0) {
        return std::clamp(hi, -bound_hz, bound_hz);
    }
    if ((r_lo > 0.0) == (r_hi > 0.0)) {
        return chord;
    }
    // Illinois variant: halve the stale end's residual to keep superlinear convergence.
    int side = 0;
    double f = chord;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(std::abs(lo), std::abs(hi)); ++iter) {
        f = (lo * r_hi - hi * r_lo) / (r_hi - r_lo);
        const double r = residual(f);
        if (r == 0.0) {
            break;
        }
        if ((r > 0.0) == (r_lo > 0.0)) {
            lo = f;
            r_lo = r;
            if (side == -1) {
                r_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = f;
            r_hi = r;
            if (side == 1) {
                r_lo *= 0.5;
            }
            side = 1;
        }
    }
    // g is monotone here, so the clamped root is the closest feasible value.
    return std::clamp(f, -bound_hz, bound_hz);
}

void BcdlaConfig::validate(std::size_t subarrays) const
{
    if (!(epsilon_hz > 0.0)) {
        throw DomainError("BCDLA epsilon must be positive");
    }
    if (r_stop != 0 && r_stop < subarrays) {
        throw DomainError("BCDLA r_stop must cover at least one full sweep (r_stop >= M)");
    }
    if (!(bound_hz >= 0.0) || !std::isfinite(bound_hz)) {
        throw DomainError("BCDLA FOI bound must be non-negative");
    }
    if (initial_foi && initial_foi->size() != subarrays) {
        throw DomainError("BCDLA initial FOI length does not match the subarray count");
    }
}

std::size_t BcdlaConfig::update_limit(std::size_t subarrays) const
{
    return r_stop == 0 ? 50 * subarrays : r_stop;
}

BcdlaProblem::BcdlaProblem(const ArrayGeometry& geom, const FieldPoint& target,
                           const FieldPoint& eve, double bound_hz)
    : geom_(geom), args_(kernel_args(geom, eve, target)), bound_(bound_hz)
{
    if (args_.a == 0.0 && args_.b == 0.0) {
        throw DegenerateObjective("objective constant: eavesdropper at the target");
    }
    require_varying(args_);
    const std::size_t n = geom.elements_per_subarray;
    lobe_ = lobe_width(n, args_);
    // Interior extrema plus both bound endpoints: every adjacent pair is a
    // feasible monotone piece of g.
    pieces_.push_back({-bound_, gain_at(n, args_, -bound_)});
    for (const auto& p : peaks_between(n, args_, -bound_, bound_)) {
        if (p.delta_f_hz > -bound_ && p.delta_f_hz < bound_) {
            pieces_.push_back(p);
        }
    }
    pieces_.push_back({bound_, gain_at(n, args_, bound_)});
    range_ = attainable_gain(n, args_, bound_);
}

double BcdlaProblem::objective(std::span<const double> offsets_hz) const
{
    return frb_power(geom_, offsets_hz, args_);
}

double BcdlaProblem::search_block(std::span<const double> offsets_hz, std::size_t m) const
{
    std::vector<double> trial(offsets_hz.begin(), offsets_hz.end());
    auto value = [&](double f) {
        trial[m] = f;
        return objective(trial);
    };
    const std::size_t count = sample_count(2.0 * bound_, lobe_);
    const double h = 2.0 * bound_ / static_cast<double>(count - 1);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const double v = value(-bound_ + static_cast<double>(i) * h);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const double lo = std::max(-bound_, -bound_ + (static_cast<double>(best) - 1.0) * h);
    const double hi = std::min(bound_, -bound_ + (static_cast<double>(best) + 1.0) * h);
    const double f = golden_min(value, lo, hi, 1e-12 * std::max(bound_, lobe_));
    const double f_grid = -bound_ + static_cast<double>(best) * h;
    return value(f) <= value(f_grid) ? f : f_grid;
}

BlockUpdate BcdlaProblem::update(std::span<const double> offsets_hz, std::size_t m, BlockRule rule,
                                 bool refine_root) const
{
    const std::size_t n = geom_.elements_per_subarray;
    const double current = objective(offsets_hz);
    BlockUpdate out;
    const double raw = block_target_unclamped(n, offsets_hz, m, args_, rule);
    out.target_g = std::clamp(raw, range_.min.gain, range_.max.gain);
    try {
        const auto interval = select_interval(pieces_, out.target_g, offsets_hz[m], bound_);
        out.proposal_hz = refine_root ? solve_on_interval(n, args_, interval, out.target_g, bound_)
                                      : invert_linear(interval, out.target_g, bound_);
    } catch (const TargetUnreachable&) {
        out.proposal_hz =
            std::abs(out.target_g - range_.min.gain) <= std::abs(out.target_g - range_.max.gain)
                ? range_.min.delta_f_hz
                : range_.max.delta_f_hz;
    }

    std::vector<double> trial(offsets_hz.begin(), offsets_hz.end());
    trial[m] = out.proposal_hz;
    double trial_value = objective(trial);
    out.kind = UpdateKind::Linear;
    if (!improves(trial_value, current)) {
        trial[m] = search_block(offsets_hz, m);
        trial_value = objective(trial);
        out.kind = UpdateKind::Fallback;
    }
    if (improves(trial_value, current)) {
        out.delta_f_hz = trial[m];
        out.objective = trial_value;
    } else {
        out.delta_f_hz = offsets_hz[m];
        out.objective = current;
        out.kind = UpdateKind::Kept;
    }
    return out;
}

BcdlaResult bcdla_optimize(const ArrayGeometry& geom, const FieldPoint& target,
                           const FieldPoint& eve, const BcdlaConfig& config)
{
    const std::size_t m_count = geom.subarrays;
    config.validate(m_count);
    const BcdlaProblem problem(geom, target, eve, config.bound_hz);
    const double bound = config.bound_hz;

    std::vector<double> x;
    if (config.initial_foi) {
        x = *config.initial_foi;
    } else {
        Rng rng(config.seed);
        x.resize(m_count);
        for (double& v : x) {
            v = rng.uniform(-bound, bound);
        }
    }
    // Validates the bound and the narrowband condition.
    const double initial = frb_gain(geom, FoiVector(x, bound), eve, target).power;

    BcdlaResult result;
    result.initial_objective = initial;
    double current = problem.objective(x);
    result.trace.push_back({0, 0, 0.0, current, x});

    const std::size_t limit = config.update_limit(m_count);
    double sweep_change = 0.0;
    for (std::size_t r = 1; r <= limit; ++r) {
        const std::size_t m = (r - 1) % m_count;
        const auto step = problem.update(x, m, config.rule, config.refine_root);
        sweep_change = std::max(sweep_change, std::abs(step.delta_f_hz - x[m]));
        x[m] = step.delta_f_hz;
        current = step.objective;
        result.update_kinds.push_back(step.kind);

        if (m + 1 == m_count || r == limit) {
            result.trace.push_back({result.trace.size(), r, sweep_change, current, x});
            if (m + 1 == m_count && sweep_change < config.epsilon_hz) {
                result.converged = true;
                break;
            }
            sweep_change = 0.0;
        }
    }
    result.foi = FoiVector(x, bound);
    result.final_objective = current;
    return result;
}

} // namespace fdsa
