#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/walk/measure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace lamplight::walk {

/// X_0..X_n with states[t + 1] = states[t] * steps[t] (identity for lazy steps).
struct Trajectory {
    group::GroupSpec spec;
    std::vector<group::Element> states;
    std::vector<group::Element> steps;
    std::uint64_t seed = 0;
};

/// n-step walk from `start`, reproducible from `seed`. Throws ParameterError for n < 0.
Trajectory sample_trajectory(const StepMeasure& measure, const group::Element& start, std::int64_t n,
                             std::uint64_t seed);

/// T[k - 1] = T_k, the least t with #{j <= t : base(X_j) = 1} >= k, so T_1 = 0
/// for a walk started at the base origin. E[r] = least t with |base(X_t)| > r.
/// Times past the trajectory horizon are empty.
struct StoppingRecord {
    std::vector<std::optional<std::int64_t>> T;
    std::map<std::int64_t, std::optional<std::int64_t>> E;
    std::int64_t horizon = 0;

    std::optional<std::int64_t> T_k(std::size_t k) const { return k >= 1 && k <= T.size() ? T[k - 1] : std::nullopt; }
};

StoppingRecord stopping_times(const Trajectory& trajectory, std::size_t k_max, std::span<const std::int64_t> radii);

/// Base component of a state: the position of a wreath element, the element
/// itself for atom groups.
const group::Element& base_of(const group::GroupSpec& spec, const group::Element& x);

}  // namespace lamplight::walk
