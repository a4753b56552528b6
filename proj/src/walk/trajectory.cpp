#include "lamplight/walk/trajectory.hpp"

#include "lamplight/group/word_length.hpp"
#include "lamplight/util/errors.hpp"

namespace lamplight::walk {

using group::Element;

const Element& base_of(const group::GroupSpec& spec, const Element& x) {
    return spec.is_wreath() ? x.position() : x;
}

Trajectory sample_trajectory(const StepMeasure& measure, const Element& start, std::int64_t n, std::uint64_t seed) {
    if (n < 0) throw ParameterError("trajectory length must be >= 0");
    const auto& spec = measure.spec();
    if (!group::belongs_to(start, spec)) throw SpecMismatch("start is not an element of " + spec.to_string());
    Trajectory t{spec, {start}, {}, seed};
    t.states.reserve(static_cast<std::size_t>(n) + 1);
    t.steps.reserve(static_cast<std::size_t>(n));
    const Element id = group::identity(spec);
    Rng rng(seed);
    for (std::int64_t i = 0; i < n; ++i) {
        const std::size_t a = measure.sample(rng);
        const Element& s = a == measure.atoms().size() ? id : measure.atoms()[a].element;
        t.steps.push_back(s);
        t.states.push_back(group::detail::mul(t.states.back(), s));
    }
    return t;
}

StoppingRecord stopping_times(const Trajectory& trajectory, std::size_t k_max, std::span<const std::int64_t> radii) {
    StoppingRecord rec;
    rec.horizon = static_cast<std::int64_t>(trajectory.states.size()) - 1;
    rec.T.assign(k_max, std::nullopt);
    for (auto r : radii) rec.E[r] = std::nullopt;
    std::size_t visits = 0;
    std::int64_t reach = -1;  // running max of the base distance
    auto pending = rec.E.begin();
    for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
        const Element& b = base_of(trajectory.spec, trajectory.states[t]);
        if (b.is_identity() && visits < k_max) rec.T[visits++] = static_cast<std::int64_t>(t);
        reach = std::max(reach, group::base_distance(b));
        // radii are sorted in the map, so exits are found in order
        while (pending != rec.E.end() && reach > pending->first) {
            pending->second = static_cast<std::int64_t>(t);
            ++pending;
        }
    }
    return rec;
}

}  // namespace lamplight::walk
