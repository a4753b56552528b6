#include "lamplight/group/element.hpp"

#include "lamplight/util/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace lamplight::group {

namespace {

constexpr std::size_t mix(std::size_t seed, std::size_t value) noexcept {
    return seed ^ (value + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2));
}

bool order_preserving_translation(const Element& g) noexcept {
    return g.kind() == Element::Kind::IntegerLine || g.kind() == Element::Kind::IntegerGrid;
}

void sort_entries(std::vector<LampEntry>& lamps) {
    std::sort(lamps.begin(), lamps.end(), [](const LampEntry& a, const LampEntry& b) { return a.point < b.point; });
}

}  // namespace

Element Element::c2(bool on) {
    Element e;
    e.kind_ = Kind::CyclicTwo;
    e.x_ = on ? 1 : 0;
    e.rehash();
    return e;
}

Element Element::line(std::int64_t x) {
    Element e;
    e.kind_ = Kind::IntegerLine;
    e.x_ = x;
    e.rehash();
    return e;
}

Element Element::grid(std::int64_t x, std::int64_t y) {
    Element e;
    e.kind_ = Kind::IntegerGrid;
    e.x_ = x;
    e.y_ = y;
    e.rehash();
    return e;
}

Element Element::wreath(std::vector<LampEntry> lamps, Element position) {
    std::erase_if(lamps, [](const LampEntry& entry) { return entry.value.is_identity(); });
    sort_entries(lamps);
    for (std::size_t i = 1; i < lamps.size(); ++i) {
        if (lamps[i - 1].point == lamps[i].point) throw SpecMismatch("wreath element: duplicate lamp point");
    }
    Element e;
    e.kind_ = Kind::Wreath;
    e.wreath_ = std::make_shared<const WreathData>(WreathData{std::move(lamps), std::move(position)});
    e.rehash();
    return e;
}

void Element::rehash() noexcept {
    std::size_t h = mix(static_cast<std::size_t>(kind_), static_cast<std::size_t>(x_));
    h = mix(h, static_cast<std::size_t>(y_));
    if (wreath_) {
        for (const auto& entry : wreath_->lamps) {
            h = mix(h, entry.point.hash());
            h = mix(h, entry.value.hash());
        }
        h = mix(h, wreath_->position.hash());
    }
    hash_ = h;
}

const Element& Element::position() const {
    if (!wreath_) throw SpecMismatch("position(): element is not a wreath element");
    return wreath_->position;
}

const Element* Element::lamp_at(const Element& point) const noexcept {
    if (!wreath_) return nullptr;
    const auto& lamps = wreath_->lamps;
    auto it = std::lower_bound(lamps.begin(), lamps.end(), point,
                               [](const LampEntry& entry, const Element& p) { return entry.point < p; });
    if (it != lamps.end() && it->point == point) return &it->value;
    return nullptr;
}

bool Element::is_identity() const noexcept {
    if (kind_ != Kind::Wreath) return x_ == 0 && y_ == 0;
    return wreath_->lamps.empty() && wreath_->position.is_identity();
}

bool operator==(const Element& a, const Element& b) noexcept {
    if (a.hash_ != b.hash_ || a.kind_ != b.kind_ || a.x_ != b.x_ || a.y_ != b.y_) return false;
    if (a.kind_ != Element::Kind::Wreath || a.wreath_ == b.wreath_) return true;
    const auto& la = a.wreath_->lamps;
    const auto& lb = b.wreath_->lamps;
    if (la.size() != lb.size() || !(a.wreath_->position == b.wreath_->position)) return false;
    for (std::size_t i = 0; i < la.size(); ++i) {
        if (!(la[i].point == lb[i].point) || !(la[i].value == lb[i].value)) return false;
    }
    return true;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (a.kind_ != Element::Kind::Wreath) {
        if (auto c = a.x_ <=> b.x_; c != 0) return c;
        return a.y_ <=> b.y_;
    }
    const auto& la = a.wreath_->lamps;
    const auto& lb = b.wreath_->lamps;
    const std::size_t n = std::min(la.size(), lb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = la[i].point <=> lb[i].point; c != 0) return c;
        if (auto c = la[i].value <=> lb[i].value; c != 0) return c;
    }
    if (auto c = la.size() <=> lb.size(); c != 0) return c;
    return a.wreath_->position <=> b.wreath_->position;
}

Element identity(const GroupSpec& spec) {
    switch (spec.kind()) {
        case GroupSpec::Kind::CyclicTwo: return Element::c2(false);
        case GroupSpec::Kind::IntegerLine: return Element::line(0);
        case GroupSpec::Kind::IntegerGrid: return Element::grid(0, 0);
        case GroupSpec::Kind::Wreath: return Element::wreath({}, identity(spec.base()));
    }
    return {};
}

bool belongs_to(const Element& e, const GroupSpec& spec) noexcept {
    if (e.kind() != spec.kind()) return false;
    switch (spec.kind()) {
        case GroupSpec::Kind::CyclicTwo: return (e.x() == 0 || e.x() == 1) && e.y() == 0;
        case GroupSpec::Kind::IntegerLine: return e.y() == 0;
        case GroupSpec::Kind::IntegerGrid: return true;
        case GroupSpec::Kind::Wreath: {
            if (!belongs_to(e.position(), spec.base())) return false;
            for (const auto& entry : e.lamps()) {
                if (!belongs_to(entry.point, spec.base()) || !belongs_to(entry.value, spec.lamp())) return false;
                if (entry.value.is_identity()) return false;
            }
            return true;
        }
    }
    return false;
}

namespace detail {

Element mul(const Element& a, const Element& b) {
    switch (a.kind()) {
        case Element::Kind::CyclicTwo: return Element::c2((a.x() ^ b.x()) != 0);
        case Element::Kind::IntegerLine: return Element::line(a.x() + b.x());
        case Element::Kind::IntegerGrid: return Element::grid(a.x() + b.x(), a.y() + b.y());
        case Element::Kind::Wreath: break;
    }
    const Element& g = a.position();
    const auto rhs_lamps = b.lamps();
    if (rhs_lamps.empty()) {
        std::vector<LampEntry> lamps(a.lamps().begin(), a.lamps().end());
        return Element::wreath(std::move(lamps), mul(g, b.position()));
    }
    // Translate the right configuration by g: xi(g^-1 .) has entry (g q, v).
    std::vector<LampEntry> shifted;
    shifted.reserve(rhs_lamps.size());
    for (const auto& entry : rhs_lamps) shifted.push_back({mul(g, entry.point), entry.value});
    if (!order_preserving_translation(g)) sort_entries(shifted);

    const auto lhs_lamps = a.lamps();
    std::vector<LampEntry> merged;
    merged.reserve(lhs_lamps.size() + shifted.size());
    std::size_t i = 0, j = 0;
    while (i < lhs_lamps.size() || j < shifted.size()) {
        if (j == shifted.size() || (i < lhs_lamps.size() && lhs_lamps[i].point < shifted[j].point)) {
            merged.push_back(lhs_lamps[i++]);
        } else if (i == lhs_lamps.size() || shifted[j].point < lhs_lamps[i].point) {
            merged.push_back(std::move(shifted[j++]));
        } else {
            Element value = mul(lhs_lamps[i].value, shifted[j].value);
            if (!value.is_identity()) merged.push_back({lhs_lamps[i].point, std::move(value)});
            ++i;
            ++j;
        }
    }
    return Element::wreath(std::move(merged), mul(g, b.position()));
}

Element inv(const Element& a) {
    switch (a.kind()) {
        case Element::Kind::CyclicTwo: return a;
        case Element::Kind::IntegerLine: return Element::line(-a.x());
        case Element::Kind::IntegerGrid: return Element::grid(-a.x(), -a.y());
        case Element::Kind::Wreath: break;
    }
    // (w, g)^-1 = (w(g .)^-1, g^-1): entry (p, v) moves to (g^-1 p, v^-1).
    const Element g_inv = inv(a.position());
    std::vector<LampEntry> lamps;
    lamps.reserve(a.lamps().size());
    for (const auto& entry : a.lamps()) lamps.push_back({mul(g_inv, entry.point), inv(entry.value)});
    return Element::wreath(std::move(lamps), g_inv);
}

}  // namespace detail

Element multiply(const GroupSpec& spec, const Element& a, const Element& b) {
    if (!belongs_to(a, spec) || !belongs_to(b, spec))
        throw SpecMismatch("multiply: operand is not an element of " + spec.to_string());
    return detail::mul(a, b);
}

Element inverse(const GroupSpec& spec, const Element& a) {
    if (!belongs_to(a, spec)) throw SpecMismatch("inverse: operand is not an element of " + spec.to_string());
    return detail::inv(a);
}

std::vector<Generator> generators(const GroupSpec& spec) {
    using K = Generator::Kind;
    switch (spec.kind()) {
        case GroupSpec::Kind::CyclicTwo: return {{K::Atom, "flip", Element::c2(true)}};
        case GroupSpec::Kind::IntegerLine:
            return {{K::Atom, "+1", Element::line(1)}, {K::Atom, "-1", Element::line(-1)}};
        case GroupSpec::Kind::IntegerGrid:
            return {{K::Atom, "+x", Element::grid(1, 0)},
                    {K::Atom, "-x", Element::grid(-1, 0)},
                    {K::Atom, "+y", Element::grid(0, 1)},
                    {K::Atom, "-y", Element::grid(0, -1)}};
        case GroupSpec::Kind::Wreath: break;
    }
    std::vector<Generator> out;
    const Element base_id = identity(spec.base());
    for (auto& s : generators(spec.lamp())) {
        out.push_back({K::Switch, "switch(" + s.label + ")", Element::wreath({{base_id, s.element}}, base_id)});
    }
    for (auto& u : generators(spec.base())) {
        out.push_back({K::Move, "move(" + u.label + ")", Element::wreath({}, u.element)});
    }
    return out;
}

Element with_lamp(const GroupSpec& spec, const Element& x, const Element& point, const Element& value) {
    if (!spec.is_wreath() || !belongs_to(x, spec)) throw SpecMismatch("with_lamp: element/spec mismatch");
    if (!belongs_to(point, spec.base())) throw SpecMismatch("with_lamp: point is not in the base group");
    if (!belongs_to(value, spec.lamp()))
        throw SpecMismatch("with_lamp: value is not in the lamp group");
    std::vector<LampEntry> lamps;
    lamps.reserve(x.lamps().size() + 1);
    for (const auto& entry : x.lamps()) {
        if (!(entry.point == point)) lamps.push_back(entry);
    }
    lamps.push_back({point, value});
    return Element::wreath(std::move(lamps), x.position());
}

std::int64_t atom_length(const Element& e) {
    switch (e.kind()) {
        case Element::Kind::CyclicTwo: return e.x();
        case Element::Kind::IntegerLine: return std::llabs(e.x());
        case Element::Kind::IntegerGrid: return std::llabs(e.x()) + std::llabs(e.y());
        case Element::Kind::Wreath: break;
    }
    throw SpecMismatch("atom_length: wreath elements need word_length");
}

std::string to_string(const Element& e) {
    switch (e.kind()) {
        case Element::Kind::CyclicTwo: return e.on() ? "1" : "0";
        case Element::Kind::IntegerLine: return std::to_string(e.x());
        case Element::Kind::IntegerGrid: return "(" + std::to_string(e.x()) + "," + std::to_string(e.y()) + ")";
        case Element::Kind::Wreath: break;
    }
    std::string out = "{";
    bool first = true;
    for (const auto& entry : e.lamps()) {
        if (!first) out += ", ";
        first = false;
        out += to_string(entry.point) + ":" + to_string(entry.value);
    }
    return out + " | " + to_string(e.position()) + "}";
}

}  // namespace lamplight::group
