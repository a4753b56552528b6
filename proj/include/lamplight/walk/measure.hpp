#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/util/rng.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lamplight::walk {

struct StepAtom {
    group::Element element;
    double probability = 0.0;
    std::string label;
};

/// Finite symmetric step law: `atoms` carry positive mass, the identity carries
/// `laziness`. Construction validates positivity, total mass 1 (1e-12) and
/// symmetry mu(s) = mu(s^-1); violations throw SpecMismatch.
class StepMeasure {
public:
    StepMeasure(group::GroupSpec spec, std::vector<StepAtom> atoms, double laziness = 0.0);

    const group::GroupSpec& spec() const noexcept { return spec_; }
    const std::vector<StepAtom>& atoms() const noexcept { return atoms_; }
    double laziness() const noexcept { return laziness_; }

    /// Index of the sampled atom, or atoms().size() for a lazy step.
    std::size_t sample(Rng& rng) const;

private:
    group::GroupSpec spec_;
    std::vector<StepAtom> atoms_;
    double laziness_;
    std::vector<double> cumulative_;
};

/// Uniform measure on the generators of an atom group; for a wreath, the
/// move-or-switch measure built from the uniform measures on lamp and base.
StepMeasure uniform_measure(const group::GroupSpec& spec);

/// mu wr nu: 1/2 nu(u) on each move (1, u), 1/2 mu(s) on each switch (delta_s, 1).
StepMeasure move_or_switch(const StepMeasure& mu, const StepMeasure& nu);

/// alpha I + (1 - alpha) m. Throws ParameterError unless 0 <= alpha < 1.
StepMeasure lazy(const StepMeasure& m, double alpha);

}  // namespace lamplight::walk
