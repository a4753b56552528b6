#include "lamplight/walk/measure.hpp"

#include "lamplight/util/errors.hpp"

#include <cmath>
#include <map>

namespace lamplight::walk {

using group::Element;
using group::GroupSpec;

StepMeasure::StepMeasure(GroupSpec spec, std::vector<StepAtom> atoms, double laziness)
    : spec_(std::move(spec)), atoms_(std::move(atoms)), laziness_(laziness) {
    if (!(laziness_ >= 0.0) || laziness_ > 1.0) throw SpecMismatch("laziness must lie in [0, 1]");
    std::map<Element, double> mass;
    double total = laziness_;
    for (const auto& a : atoms_) {
        if (!(a.probability > 0.0)) throw SpecMismatch("step probabilities must be positive (" + a.label + ")");
        if (!group::belongs_to(a.element, spec_))
            throw SpecMismatch("step " + a.label + " is not an element of " + spec_.to_string());
        if (a.element.is_identity()) throw SpecMismatch("identity step " + a.label + "; use laziness instead");
        mass[a.element] += a.probability;
        total += a.probability;
        cumulative_.push_back(total - laziness_);
    }
    if (std::abs(total - 1.0) > 1e-12) throw SpecMismatch("step measure mass is " + std::to_string(total) + ", not 1");
    for (const auto& [e, m] : mass) {
        auto it = mass.find(group::inverse(spec_, e));
        double mirror = it == mass.end() ? 0.0 : it->second;
        if (std::abs(m - mirror) > 1e-12) throw SpecMismatch("step measure is not symmetric at " + group::to_string(e));
    }
}

std::size_t StepMeasure::sample(Rng& rng) const {
    const double u = rng.uniform();
    for (std::size_t i = 0; i < cumulative_.size(); ++i)
        if (u < cumulative_[i]) return i;
    return atoms_.size();
}

StepMeasure uniform_measure(const GroupSpec& spec) {
    if (spec.is_wreath()) return move_or_switch(uniform_measure(spec.lamp()), uniform_measure(spec.base()));
    auto gens = group::generators(spec);
    std::vector<StepAtom> atoms;
    for (auto& g : gens) atoms.push_back({g.element, 1.0 / static_cast<double>(gens.size()), g.label});
    return StepMeasure(spec, std::move(atoms));
}

StepMeasure move_or_switch(const StepMeasure& mu, const StepMeasure& nu) {
    auto spec = GroupSpec::wreath(mu.spec(), nu.spec());
    const Element origin = group::identity(nu.spec());
    std::vector<StepAtom> atoms;
    for (const auto& s : mu.atoms())
        atoms.push_back({Element::wreath({{origin, s.element}}, origin), 0.5 * s.probability, "switch(" + s.label + ")"});
    for (const auto& u : nu.atoms())
        atoms.push_back({Element::wreath({}, u.element), 0.5 * u.probability, "move(" + u.label + ")"});
    return StepMeasure(spec, std::move(atoms), 0.5 * (mu.laziness() + nu.laziness()));
}

StepMeasure lazy(const StepMeasure& m, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ParameterError("laziness alpha must lie in [0, 1)");
    auto atoms = m.atoms();
    for (auto& a : atoms) a.probability *= 1.0 - alpha;
    return StepMeasure(m.spec(), std::move(atoms), alpha + (1.0 - alpha) * m.laziness());
}

}  // namespace lamplight::walk
