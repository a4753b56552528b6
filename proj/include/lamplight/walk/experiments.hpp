#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/util/stats.hpp"
#include "lamplight/walk/measure.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace lamplight::walk {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

// Coupling on C2 wr Z. Two walkers start at the identity and at the lamp on
// at 0. Each walker steps lazy / switch / left / right with probability 1/4;
// moves and steps away from the origin are shared. While unglued at the
// origin the pairs (switch, lazy) and (lazy, switch) glue, each with
// probability 1/4, and (left, left), (right, right) carry the remaining mass.

/// Fraction of trials reaching base position +-r before gluing.
/// Throws ParameterError for r < 1 or trials = 0.
Estimate coupled_gluing_experiment(std::int64_t r, std::size_t trials, std::uint64_t seed);

/// The same probability from the absorbing chain on base positions (-r, r).
double coupled_gluing_exact(std::int64_t r);

/// One coupled run with full group elements, asserting at every step that
/// the walkers are equal exactly when glued.
struct CouplingTrace {
    std::int64_t steps = 0;
    bool escaped = false;
    std::optional<std::int64_t> glued_at;
    bool invariant_held = true;
    group::Element first;
    group::Element second;
};
CouplingTrace coupled_trace(std::int64_t r, std::uint64_t seed, std::int64_t max_steps = 1'000'000);

struct ScalingFit {
    std::vector<std::int64_t> radii;
    std::vector<Estimate> estimates;
    stats::LineFit fit;  ///< log estimate against log r
};
ScalingFit gluing_scaling(std::span<const std::int64_t> radii, std::size_t trials, std::uint64_t seed);

/// Simple random walk on Z^2 from g: probability of reaching L1 distance r
/// before the origin. `predicted` is a(g) / ((2/pi) ln r + kappa).
struct HittingResult {
    Estimate estimate;
    double predicted = 0.0;
};
HittingResult hitting_probability(std::int64_t gx, std::int64_t gy, std::int64_t r, std::size_t trials,
                                  std::uint64_t seed);

/// Pr(E(r) > M) for the simple random walk on Z^2, E(r) the first time the L1
/// distance exceeds r. The line fit of log tail against M uses grid points
/// with at least 10 surviving trials.
struct TailPoint {
    std::int64_t M = 0;
    double tail = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};
struct ExitTail {
    std::int64_t r = 0;
    std::vector<TailPoint> points;
    stats::LineFit fit;
    std::size_t fitted_points = 0;
};
ExitTail exit_time_tail(std::int64_t r, std::span<const std::int64_t> M_grid, std::size_t trials, std::uint64_t seed);
/// r^2/4, r^2/2, ..., 3 r^2.
std::vector<std::int64_t> default_exit_grid(std::int64_t r);

/// Law of a lazy (1/2) uniform-generator walk on an atom lamp group after k steps.
std::map<group::Element, double> lazy_lamp_law(const group::GroupSpec& lamp, std::size_t k);

/// Lamp at the base origin after k steps taken from the origin (the return
/// time T_{k+1} in the literal indexing, T_1 = 0) for the move-or-switch walk
/// on `spec` = (C2 | Z | Z2) wr (Z | Z2) started at the identity. A trial is
/// accepted when that return happens before E(r). Rejected trials finish
/// their remaining origin steps directly, which is exact because lamps at the
/// origin change only there and origin steps are i.i.d.
struct LampLawReport {
    std::size_t k = 0;
    std::int64_t r = 0;
    std::size_t trials = 0;
    std::size_t accepted = 0;
    std::vector<group::Element> values;
    std::vector<double> exact;              ///< lazy walk law at time k
    std::vector<double> accepted_counts;
    std::vector<double> rejected_counts;
    stats::ChiSquare goodness_of_fit;       ///< accepted counts against `exact`
    stats::ChiSquare independence;          ///< lamp value against acceptance
    bool independence_powered = false;      ///< false when the table collapses to one cell
};
LampLawReport lamp_law_at_return(const group::GroupSpec& spec, std::size_t k, std::int64_t r, std::size_t trials,
                                 std::uint64_t seed);

/// Excursion exchange: for paths in B = {T_{k+1} < E(r)} minus {all k
/// excursions have height 0}, compares the law of X_{T_{k+1}} with that of
/// W V, where V is the highest excursion (ties: last) moved to the end.
enum class SwapMode { Exhaustive, MonteCarlo };
struct SwapReport {
    double tv = 0.0;
    double event_mass = 0.0;  ///< exhaustive: Pr(B, T_{k+1} <= horizon); mc: accepted fraction
    std::size_t samples = 0;  ///< enumerated paths or accepted trials
    std::size_t support = 0;
};
/// Exhaustive mode enumerates every step sequence up to `horizon` (CapExceeded
/// past 2e6 sequences); mc mode samples `trials` walks, `horizon` bounding
/// their length. Throws ParameterError for k = 0.
SwapReport excursion_swap_check(const group::GroupSpec& spec, std::size_t k, std::int64_t horizon, SwapMode mode,
                                std::size_t trials, std::uint64_t seed, std::int64_t r);

/// E_x[h(X_tau)] for tau = T_{k+1} ^ E(r) with the return convention above.
/// With `lamp_override`, h is evaluated at phi_l(X_tau): the lamp at the base
/// origin replaced by l.
using ElementFunction = std::function<double(const group::Element&)>;
Estimate stopped_value_expectation(const StepMeasure& measure, const ElementFunction& h, const group::Element& x,
                                   std::size_t k, std::int64_t r, std::size_t trials, std::uint64_t seed,
                                   const std::optional<group::Element>& lamp_override = std::nullopt);

}  // namespace lamplight::walk
