#include "lamplight/walk/walker.hpp"

#include "lamplight/group/word_length.hpp"
#include "lamplight/util/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace lamplight::walk {

using group::Element;
using group::GroupSpec;
using Kind = GroupSpec::Kind;

namespace {

bool is_atom(const GroupSpec& s) { return !s.is_wreath(); }

// (x, y) coordinates of an atom element.
std::pair<std::int64_t, std::int64_t> coords(const Element& e) { return {e.x(), e.y()}; }

}  // namespace

Walker::Walker(const StepMeasure& measure, Element start) : measure_(&measure), spec_(measure.spec()), state_(start) {
    if (!group::belongs_to(start, spec_)) throw SpecMismatch("start is not an element of " + spec_.to_string());
    if (spec_.is_wreath() && !is_atom(spec_.base()))
        throw SpecMismatch("walker needs an atom base group, got " + spec_.base().to_string());

    if (!spec_.is_wreath() || !spec_.base().is_lattice() || !is_atom(spec_.lamp())) return;
    flat_atoms_.reserve(measure.atoms().size());
    for (const auto& a : measure.atoms()) {
        FlatAtom f;
        auto lamps = a.element.lamps();
        const auto& pos = a.element.position();
        if (lamps.empty()) {
            f.kind = Step::Move;
            std::tie(f.dx, f.dy) = coords(pos);
        } else if (lamps.size() == 1 && lamps[0].point.is_identity() && pos.is_identity()) {
            f.kind = Step::Switch;
            std::tie(f.lx, f.ly) = coords(lamps[0].value);
        } else {
            return;  // general atom: stay on the generic path
        }
        flat_atoms_.push_back(f);
    }
    flat_ = true;
    std::tie(x_, y_) = coords(start.position());
    for (const auto& l : start.lamps()) lamps_[key(l.point.x(), l.point.y())] = coords(l.value);
}

Walker::Step Walker::step(Rng& rng) {
    ++time_;
    const std::size_t i = measure_->sample(rng);
    if (i == measure_->atoms().size()) return Step::Lazy;
    if (!flat_) {
        state_ = group::detail::mul(state_, measure_->atoms()[i].element);
        return Step::Other;
    }
    const auto& a = flat_atoms_[i];
    if (a.kind == Step::Move) {
        x_ += a.dx;
        y_ += a.dy;
        return Step::Move;
    }
    auto k = key(x_, y_);
    auto [it, inserted] = lamps_.try_emplace(k, 0, 0);
    auto& v = it->second;
    if (spec_.lamp().kind() == Kind::CyclicTwo) {
        v.first ^= a.lx;
    } else {
        v.first += a.lx;
        v.second += a.ly;
    }
    if (v.first == 0 && v.second == 0) lamps_.erase(it);
    return Step::Switch;
}

bool Walker::at_origin() const noexcept {
    if (flat_) return x_ == 0 && y_ == 0;
    return spec_.is_wreath() ? state_.position().is_identity() : state_.is_identity();
}

std::int64_t Walker::base_distance() const {
    if (flat_) return std::abs(x_) + std::abs(y_);
    return group::base_distance(spec_.is_wreath() ? state_.position() : state_);
}

Element Walker::base_point(std::int64_t x, std::int64_t y) const {
    return spec_.base().kind() == Kind::IntegerLine ? Element::line(x) : Element::grid(x, y);
}

Element Walker::lamp_value(std::int64_t x, std::int64_t y) const {
    switch (spec_.lamp().kind()) {
        case Kind::CyclicTwo: return Element::c2(x != 0);
        case Kind::IntegerLine: return Element::line(x);
        default: return Element::grid(x, y);
    }
}

Element Walker::state() const {
    if (!flat_) return state_;
    std::vector<group::LampEntry> entries;
    entries.reserve(lamps_.size());
    for (const auto& [k, v] : lamps_) {
        auto px = static_cast<std::int32_t>(static_cast<std::uint32_t>(k >> 32));
        auto py = static_cast<std::int32_t>(static_cast<std::uint32_t>(k));
        entries.push_back({base_point(px, py), lamp_value(v.first, v.second)});
    }
    return Element::wreath(std::move(entries), base_point(x_, y_));
}

Element Walker::origin_lamp() const {
    if (!spec_.is_wreath()) throw SpecMismatch("origin lamp needs a wreath product");
    if (flat_) {
        auto it = lamps_.find(key(0, 0));
        return it == lamps_.end() ? group::identity(spec_.lamp()) : lamp_value(it->second.first, it->second.second);
    }
    const Element* v = state_.lamp_at(group::identity(spec_.base()));
    return v ? *v : group::identity(spec_.lamp());
}

}  // namespace lamplight::walk
