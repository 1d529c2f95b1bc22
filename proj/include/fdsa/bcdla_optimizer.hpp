// SPDX-License-Identifier: Apache-2.0
//
// Block coordinate descent with a linearized kernel, minimizing |B_FRB|^2 at
// a known eavesdropper location one FOI at a time.
//
// With Eve fixed, every subbeam gain is g(delta_f) = D_N(a - b delta_f) for the
// same (a, b), so the kernel peaks and attainable gain range are shared by all
// blocks.
#pragma once

#include "fdsa/array_model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fdsa {

struct KernelPeak {
    double delta_f_hz = 0.0;
    double gain = 0.0;
};

/// Chord across one monotone piece of g: g ~ A_0 delta_f + A_1. Between two
/// kernel extrema `neg` is the negative peak and `pos` the positive one; a
/// piece ending at the FOI bound keeps the lower end in `neg`.
struct KernelInterval {
    KernelPeak neg;
    KernelPeak pos;
    double slope = 0.0;     // A_0
    double intercept = 0.0; // A_1

    /// Throws DomainError when the two peaks share a frequency or a gain.
    static KernelInterval between(const KernelPeak& neg, const KernelPeak& pos);
    double lo_hz() const;
    double hi_hz() const;
};

/// Extrema of g over [-bound, bound], including the endpoints.
struct GainRange {
    KernelPeak min;
    KernelPeak max;
};

/// Local extrema of g(delta_f) = D_N(a - b delta_f) on [-bound, bound], sorted
/// by frequency. Throws DegenerateObjective when b = 0.
std::vector<KernelPeak> kernel_peaks(std::size_t elements, const KernelArgs& args, double bound_hz);
std::vector<KernelPeak> kernel_peaks(const ArrayGeometry& geom, const FieldPoint& eve,
                                     const FieldPoint& target, double bound_hz);

GainRange attainable_gain(std::size_t elements, const KernelArgs& args, double bound_hz);

enum class BlockRule {
    Halved,       // -sum / 2, as the per-block subproblem is written
    FullGradient, // -sum, exact minimizer of the block quadratic
};

/// Unclamped block target from the other subbeam gains at the eavesdropper.
double block_target_unclamped(std::size_t elements, std::span<const double> offsets_hz,
                              std::size_t m, const KernelArgs& args, BlockRule rule);
/// Clamp of the above onto the attainable gain range. Throws
/// DegenerateObjective when a = b = 0.
double block_target(const ArrayGeometry& geom, const FoiVector& foi, std::size_t m,
                    const FieldPoint& eve, const FieldPoint& target,
                    BlockRule rule = BlockRule::Halved);

/// Adjacent pair of `peaks` whose gains bracket target_g, closest to
/// current_hz; ties go to the pair nearer zero. Only pairs overlapping
/// [-bound, bound] qualify. Throws TargetUnreachable when none brackets.
KernelInterval select_interval(std::span<const KernelPeak> peaks, double target_g,
                               double current_hz, double bound_hz);

/// (target_g - A_1) / A_0 clamped to [-bound, bound].
double invert_linear(const KernelInterval& interval, double target_g, double bound_hz);

/// Exact solution of g(delta_f) = target_g inside the interval, where g is
/// monotone, by repeated chord steps (Illinois regula falsi) started from
/// invert_linear, then clamped to [-bound, bound].
double solve_on_interval(std::size_t elements, const KernelArgs& args,
                         const KernelInterval& interval, double target_g, double bound_hz);

struct BcdlaConfig {
    double epsilon_hz = 1.0;
    std::size_t r_stop = 0; // block updates; 0 selects 50 sweeps
    double bound_hz = 0.0;
    std::optional<std::vector<double>> initial_foi;
    std::uint64_t seed = 1;
    BlockRule rule = BlockRule::Halved;
    /// Replace the single chord step by solve_on_interval.
    bool refine_root = false;

    void validate(std::size_t subarrays) const;
    std::size_t update_limit(std::size_t subarrays) const;
};

/// How a block update was obtained.
enum class UpdateKind {
    Linear,   // chord inversion accepted
    Fallback, // chord rejected; bounded 1-D search accepted
    Kept,     // neither improved; block unchanged
};

struct BlockUpdate {
    double delta_f_hz = 0.0; // new value of the block
    double objective = 0.0;  // |B_FRB|^2 at the eavesdropper after the update
    double target_g = 0.0;   // clamped block target
    double proposal_hz = 0.0; // chord (or root) step before the guard
    UpdateKind kind = UpdateKind::Kept;
};

/// Fixed eavesdropper problem: kernel arguments, feasible monotone pieces of
/// g and the attainable gain range over [-bound, bound].
class BcdlaProblem {
public:
    /// Throws DegenerateObjective when a = b = 0 or b = 0.
    BcdlaProblem(const ArrayGeometry& geom, const FieldPoint& target, const FieldPoint& eve,
                 double bound_hz);

    double objective(std::span<const double> offsets_hz) const;
    /// One guarded block update of `m` starting from `offsets_hz`.
    BlockUpdate update(std::span<const double> offsets_hz, std::size_t m, BlockRule rule,
                       bool refine_root) const;
    /// Bounded dense search plus golden refinement of one block.
    double search_block(std::span<const double> offsets_hz, std::size_t m) const;

    const KernelArgs& args() const { return args_; }
    std::span<const KernelPeak> pieces() const { return pieces_; }
    const GainRange& range() const { return range_; }
    double bound_hz() const { return bound_; }

private:
    ArrayGeometry geom_;
    KernelArgs args_;
    double bound_ = 0.0;
    double lobe_ = 0.0;
    std::vector<KernelPeak> pieces_;
    GainRange range_;
};

struct BcdlaTraceRow {
    std::size_t sweep = 0;   // 0 is the starting point
    std::size_t updates = 0; // block updates so far
    double max_change_hz = 0.0;
    double objective = 0.0;
    std::vector<double> foi;
};

struct BcdlaResult {
    FoiVector foi;
    double initial_objective = 0.0;
    double final_objective = 0.0;
    bool converged = false;
    std::vector<BcdlaTraceRow> trace;
    std::vector<UpdateKind> update_kinds;
};

/// Cycles m = 0, 1, ..., M-1, 0, ... and stops once a full sweep moves no
/// FOI by epsilon or more, or after r_stop block updates.
BcdlaResult bcdla_optimize(const ArrayGeometry& geom, const FieldPoint& target,
                           const FieldPoint& eve, const BcdlaConfig& config);

} // namespace fdsa
