#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/kernel/potential_kernel.hpp"
#include "lamplight/walk/measure.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace lamplight::harmonic {

/// A function on a group together with the step measure it is claimed to be
/// harmonic for.
class HarmonicFunction {
public:
    enum class Kind { Constant, BaseCoordinate, LampSignTimesKernel, Tabulated };

    static HarmonicFunction constant(const group::GroupSpec& spec, double c);
    /// Coordinate `axis` (0 = x, 1 = y) of the base position of a wreath over Z or Z^2.
    static HarmonicFunction base_coordinate(const group::GroupSpec& spec, int axis = 0);
    /// h(sigma, z) = (-1)^sigma(0) a(z) on C2 wr Z2, harmonic for flip 1/2 and
    /// each grid move 1/8. The table must use the paper normalization.
    static HarmonicFunction lamp_sign_times_kernel(std::shared_ptr<const kernel::KernelTable> table);
    /// Tabulated values, validated at load: every element whose neighbors are
    /// all tabulated must have residual <= `tol` (SpecMismatch otherwise).
    static HarmonicFunction tabulated(walk::StepMeasure measure, std::map<group::Element, double> values,
                                      double tol = 1e-9);

    Kind kind() const noexcept { return kind_; }
    const group::GroupSpec& spec() const noexcept { return measure_->spec(); }
    const walk::StepMeasure& measure() const noexcept { return *measure_; }
    const kernel::KernelTable* table() const noexcept { return table_.get(); }
    double constant_value() const noexcept { return constant_; }
    int axis() const noexcept { return axis_; }
    const std::map<group::Element, double>* values() const noexcept { return values_.get(); }

    /// Throws SpecMismatch for foreign elements and ParameterError outside the
    /// kernel table or the tabulated support.
    double operator()(const group::Element& x) const;

private:
    HarmonicFunction(Kind kind, std::shared_ptr<const walk::StepMeasure> measure) : kind_(kind), measure_(std::move(measure)) {}

    Kind kind_;
    std::shared_ptr<const walk::StepMeasure> measure_;
    double constant_ = 0.0;
    int axis_ = 0;
    std::shared_ptr<const kernel::KernelTable> table_;
    std::shared_ptr<const std::map<group::Element, double>> values_;
};

double evaluate(const HarmonicFunction& h, const group::Element& x);

/// |sum_s m(s) h(x s) + laziness h(x) - h(x)|.
double harmonicity_residual(const HarmonicFunction& h, const walk::StepMeasure& measure, const group::Element& x);

/// Largest residual of a lamp-sign-times-kernel function over the L1 ball of
/// radius `radius` in Z^2 crossed with both states of the origin lamp.
double max_lamp_kernel_residual(const HarmonicFunction& h, std::int64_t radius);

/// phi_l: the lamp at the base origin set to l, other lamps unchanged.
group::Element lamp_override(const group::GroupSpec& spec, const group::Element& x, const group::Element& l);

/// M_h(r) = max {|h(y) - h(1)| : |y| <= r}. Certified mode brackets it by
/// explicit witnesses (word length checked) and a closed-form upper bound;
/// exact mode enumerates the Cayley ball.
enum class GrowthMode { Certified, Exact };
struct GrowthPoint {
    std::int64_t r = 0;
    double lower = 0.0;
    double upper = 0.0;
};
std::vector<GrowthPoint> growth_profile(const HarmonicFunction& h, std::span<const std::int64_t> radii,
                                        GrowthMode mode = GrowthMode::Certified);

/// On Z with +-1 steps a harmonic function is affine: max over n in
/// [from, to) of |(h(n+1) - h(n)) - (h(from+1) - h(from))|.
double line_increment_spread(const HarmonicFunction& h, std::int64_t from, std::int64_t to);

nlohmann::json to_json(const HarmonicFunction& h);
/// Kinds: {"kind": "constant", "group", "value"}, {"kind": "base-coordinate",
/// "group", "axis"}, {"kind": "lamp-sign-kernel", "radius"}, {"kind":
/// "tabulated", "group", "values": [[element, value], ...]}.
HarmonicFunction harmonic_from_json(const nlohmann::json& j);

}  // namespace lamplight::harmonic
