#include "lamplight/harmonic/harmonic.hpp"

#include "lamplight/group/serialize.hpp"
#include "lamplight/group/word_length.hpp"
#include "lamplight/util/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace lamplight::harmonic {

using group::Element;
using group::GroupSpec;

namespace {

std::shared_ptr<const walk::StepMeasure> shared_uniform(const GroupSpec& spec) {
    return std::make_shared<const walk::StepMeasure>(walk::uniform_measure(spec));
}

const GroupSpec& c2_wr_z2() {
    static const GroupSpec s = GroupSpec::wreath(GroupSpec::cyclic_two(), GroupSpec::grid());
    return s;
}

void require_member(const HarmonicFunction& h, const Element& x) {
    if (!group::belongs_to(x, h.spec())) throw SpecMismatch("element is not in " + h.spec().to_string());
}

const char* kind_name(HarmonicFunction::Kind k) {
    switch (k) {
        case HarmonicFunction::Kind::Constant: return "constant";
        case HarmonicFunction::Kind::BaseCoordinate: return "base-coordinate";
        case HarmonicFunction::Kind::LampSignTimesKernel: return "lamp-sign-kernel";
        case HarmonicFunction::Kind::Tabulated: return "tabulated";
    }
    return "?";
}

}  // namespace

HarmonicFunction HarmonicFunction::constant(const GroupSpec& spec, double c) {
    HarmonicFunction h(Kind::Constant, shared_uniform(spec));
    h.constant_ = c;
    return h;
}

HarmonicFunction HarmonicFunction::base_coordinate(const GroupSpec& spec, int axis) {
    if (!spec.is_wreath() || !spec.base().is_lattice())
        throw SpecMismatch("base coordinate needs a wreath over Z or Z2, got " + spec.to_string());
    if (axis < 0 || axis > (spec.base().kind() == GroupSpec::Kind::IntegerGrid ? 1 : 0))
        throw ParameterError("axis out of range for " + spec.base().to_string());
    HarmonicFunction h(Kind::BaseCoordinate, shared_uniform(spec));
    h.axis_ = axis;
    return h;
}

HarmonicFunction HarmonicFunction::lamp_sign_times_kernel(std::shared_ptr<const kernel::KernelTable> table) {
    if (!table) throw ParameterError("kernel table is required");
    if (table->offset != 0.5) throw SpecMismatch("lamp-sign kernel function needs the paper normalization a(0) = 1/2");
    HarmonicFunction h(Kind::LampSignTimesKernel, shared_uniform(c2_wr_z2()));
    h.table_ = std::move(table);
    return h;
}

HarmonicFunction HarmonicFunction::tabulated(walk::StepMeasure measure, std::map<Element, double> values, double tol) {
    for (const auto& [x, v] : values)
        if (!group::belongs_to(x, measure.spec())) throw SpecMismatch("tabulated element " + group::to_string(x) + " is foreign");
    HarmonicFunction h(Kind::Tabulated, std::make_shared<const walk::StepMeasure>(std::move(measure)));
    h.values_ = std::make_shared<const std::map<Element, double>>(std::move(values));
    for (const auto& [x, v] : *h.values_) {
        bool interior = std::all_of(h.measure().atoms().begin(), h.measure().atoms().end(), [&](const walk::StepAtom& a) {
            return h.values_->count(group::detail::mul(x, a.element)) > 0;
        });
        if (interior && harmonicity_residual(h, h.measure(), x) > tol)
            throw SpecMismatch("tabulated function is not harmonic at " + group::to_string(x));
    }
    return h;
}

double HarmonicFunction::operator()(const Element& x) const {
    require_member(*this, x);
    switch (kind_) {
        case Kind::Constant: return constant_;
        case Kind::BaseCoordinate: {
            const Element& p = x.position();
            return static_cast<double>(axis_ == 0 ? p.x() : p.y());
        }
        case Kind::LampSignTimesKernel: {
            const Element& p = x.position();
            if (!table_->contains(p.x(), p.y()))
                throw ParameterError("position " + group::to_string(p) + " outside kernel table radius " +
                                     std::to_string(table_->radius));
            const double a = table_->at(p.x(), p.y());
            return x.lamp_at(Element::grid(0, 0)) ? -a : a;
        }
        case Kind::Tabulated: {
            auto it = values_->find(x);
            if (it == values_->end()) throw ParameterError("no tabulated value at " + group::to_string(x));
            return it->second;
        }
    }
    return 0.0;
}

double evaluate(const HarmonicFunction& h, const Element& x) { return h(x); }

double harmonicity_residual(const HarmonicFunction& h, const walk::StepMeasure& measure, const Element& x) {
    if (!(measure.spec() == h.spec())) throw SpecMismatch("measure and function live on different groups");
    const double hx = h(x);
    double mean = measure.laziness() * hx;
    for (const auto& a : measure.atoms()) mean += a.probability * h(group::detail::mul(x, a.element));
    return std::abs(mean - hx);
}

double max_lamp_kernel_residual(const HarmonicFunction& h, std::int64_t radius) {
    if (h.kind() != HarmonicFunction::Kind::LampSignTimesKernel) throw SpecMismatch("needs the lamp-sign kernel function");
    if (radius + 1 > h.table()->radius) throw ParameterError("kernel table too small for the residual scan");
    const Element on = Element::c2(true);
    double worst = 0.0;
    for (std::int64_t x = -radius; x <= radius; ++x) {
        const std::int64_t span = radius - std::llabs(x);
        for (std::int64_t y = -span; y <= span; ++y) {
            const Element off_state = Element::wreath({}, Element::grid(x, y));
            const Element on_state = Element::wreath({{Element::grid(0, 0), on}}, Element::grid(x, y));
            worst = std::max(worst, harmonicity_residual(h, h.measure(), off_state));
            worst = std::max(worst, harmonicity_residual(h, h.measure(), on_state));
        }
    }
    return worst;
}

Element lamp_override(const GroupSpec& spec, const Element& x, const Element& l) {
    if (!spec.is_wreath()) throw SpecMismatch("lamp override needs a wreath product");
    return group::with_lamp(spec, x, group::identity(spec.base()), l);
}

std::vector<GrowthPoint> growth_profile(const HarmonicFunction& h, std::span<const std::int64_t> radii, GrowthMode mode) {
    std::vector<GrowthPoint> out;
    for (auto r : radii)
        if (r < 0) throw ParameterError("radii must be >= 0");
    const GroupSpec& spec = h.spec();
    const Element id = group::identity(spec);
    const double h0 = h(id);

    if (mode == GrowthMode::Exact) {
        const std::int64_t top = radii.empty() ? 0 : *std::max_element(radii.begin(), radii.end());
        if (top > 10) throw CapExceeded("exact growth profile is limited to radius 10");
        auto ball = group::bfs_ball(spec, static_cast<int>(top));
        for (auto r : radii) {
            double m = 0.0;
            for (const auto& [y, d] : ball)
                if (d <= r) m = std::max(m, std::abs(h(y) - h0));
            out.push_back({r, m, m});
        }
        return out;
    }

    // certified: explicit witnesses of checked length, closed-form upper bounds
    auto checked = [&](const Element& w, std::int64_t r) {
        auto len = group::word_length(spec, w, group::WordMode::Bounds);
        if (len.upper > r) throw std::logic_error("witness longer than its radius");
        return std::abs(h(w) - h0);
    };
    for (auto r : radii) {
        GrowthPoint p{r, 0.0, 0.0};
        switch (h.kind()) {
            case HarmonicFunction::Kind::Constant: break;
            case HarmonicFunction::Kind::BaseCoordinate: {
                // |coordinate| <= base L1 distance <= word length
                const Element tip = spec.base().kind() == GroupSpec::Kind::IntegerLine
                                        ? Element::line(r)
                                        : (h.axis() == 0 ? Element::grid(r, 0) : Element::grid(0, r));
                p.lower = checked(Element::wreath({}, tip), r);
                p.upper = static_cast<double>(r);
                break;
            }
            case HarmonicFunction::Kind::LampSignTimesKernel: {
                const auto& t = *h.table();
                if (r > t.radius) throw ParameterError("radius beyond the kernel table");
                // |h(y) - h(1)| is a(z) with the origin lamp off and a(z) + 1 with
                // it on; the latter needs |y| >= |z|_1 + 1.
                auto argmax = [&](std::int64_t rho) {
                    std::pair<std::int64_t, std::int64_t> best{0, 0};
                    for (std::int64_t x = -rho; x <= rho; ++x) {
                        const std::int64_t span = rho - std::llabs(x);
                        for (std::int64_t y = -span; y <= span; ++y)
                            if (t.standard_at(x, y) > t.standard_at(best.first, best.second)) best = {x, y};
                    }
                    return best;
                };
                auto [x1, y1] = argmax(r);
                const double off = t.standard_at(x1, y1);
                p.lower = checked(Element::wreath({}, Element::grid(x1, y1)), r);
                p.upper = off;
                if (r >= 1) {
                    auto [x2, y2] = argmax(r - 1);
                    const Element w = Element::wreath({{Element::grid(0, 0), Element::c2(true)}}, Element::grid(x2, y2));
                    p.lower = std::max(p.lower, checked(w, r));
                    p.upper = std::max(p.upper, t.standard_at(x2, y2) + 1.0);
                }
                break;
            }
            case HarmonicFunction::Kind::Tabulated:
                throw ParameterError("certified growth needs a closed-form function; use exact mode");
        }
        out.push_back(p);
    }
    return out;
}

double line_increment_spread(const HarmonicFunction& h, std::int64_t from, std::int64_t to) {
    if (h.spec().kind() != GroupSpec::Kind::IntegerLine) throw SpecMismatch("increment check needs the group Z");
    if (to <= from) throw ParameterError("empty range");
    const double d0 = h(Element::line(from + 1)) - h(Element::line(from));
    double spread = 0.0;
    for (std::int64_t n = from; n < to; ++n) spread = std::max(spread, std::abs(h(Element::line(n + 1)) - h(Element::line(n)) - d0));
    return spread;
}

nlohmann::json to_json(const HarmonicFunction& h) {
    nlohmann::json j{{"kind", kind_name(h.kind())}, {"group", h.spec().to_string()}};
    switch (h.kind()) {
        case HarmonicFunction::Kind::Constant: j["value"] = h.constant_value(); break;
        case HarmonicFunction::Kind::BaseCoordinate: j["axis"] = h.axis(); break;
        case HarmonicFunction::Kind::LampSignTimesKernel:
            j["radius"] = h.table()->radius;
            j["accuracy"] = h.table()->accuracy;
            break;
        case HarmonicFunction::Kind::Tabulated: {
            auto& vals = j["values"] = nlohmann::json::array();
            for (const auto& [x, v] : *h.values()) vals.push_back({group::to_json(x), v});
            break;
        }
    }
    auto& m = j["measure"] = nlohmann::json::array();
    for (const auto& a : h.measure().atoms()) m.push_back({{"step", a.label}, {"probability", a.probability}});
    j["laziness"] = h.measure().laziness();
    return j;
}

HarmonicFunction harmonic_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "lamp-sign-kernel") {
            auto table = kernel::build_kernel_table(j.at("radius").get<std::int64_t>(), j.value("accuracy", 1e-12),
                                                    kernel::Normalization::Paper);
            return HarmonicFunction::lamp_sign_times_kernel(std::make_shared<const kernel::KernelTable>(std::move(table)));
        }
        const GroupSpec spec = group::parse_group_spec(j.at("group").get<std::string>());
        if (kind == "constant") return HarmonicFunction::constant(spec, j.at("value").get<double>());
        if (kind == "base-coordinate") return HarmonicFunction::base_coordinate(spec, j.value("axis", 0));
        if (kind == "tabulated") {
            std::map<Element, double> values;
            for (const auto& row : j.at("values")) values[group::element_from_json(spec, row.at(0))] = row.at(1).get<double>();
            return HarmonicFunction::tabulated(walk::uniform_measure(spec), std::move(values), j.value("tol", 1e-9));
        }
        throw ParameterError("unknown harmonic function kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("malformed harmonic function descriptor: ") + e.what());
    }
}

}  // namespace lamplight::harmonic
