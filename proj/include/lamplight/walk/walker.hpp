#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/util/rng.hpp"
#include "lamplight/walk/measure.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lamplight::walk {

/// Single random walker on an atom group or on a wreath whose base is an atom
/// group. Wreaths with a lattice base, an atom lamp and a step law made of
/// pure moves and pure origin switches run on a flat hash-map state; anything
/// else multiplies Elements.
class Walker {
public:
    enum class Step { Lazy, Move, Switch, Other };

    Walker(const StepMeasure& measure, group::Element start);

    Step step(Rng& rng);

    std::int64_t time() const noexcept { return time_; }
    bool at_origin() const noexcept;
    /// Word distance of the base position from the base identity.
    std::int64_t base_distance() const;
    /// Current element (materialized on demand for the flat state).
    group::Element state() const;
    /// Lamp at the base origin; identity of the lamp group when off.
    group::Element origin_lamp() const;
    bool is_flat() const noexcept { return flat_; }

private:
    struct FlatAtom {
        Step kind = Step::Other;
        std::int64_t dx = 0, dy = 0;  // move
        std::int64_t lx = 0, ly = 0;  // lamp increment
    };

    const StepMeasure* measure_;
    group::GroupSpec spec_;
    bool flat_ = false;
    std::int64_t time_ = 0;

    // generic state
    group::Element state_;

    // flat state
    std::vector<FlatAtom> flat_atoms_;
    std::int64_t x_ = 0, y_ = 0;
    std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::int64_t>> lamps_;

    static std::uint64_t key(std::int64_t x, std::int64_t y) noexcept {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
    }
    group::Element base_point(std::int64_t x, std::int64_t y) const;
    group::Element lamp_value(std::int64_t x, std::int64_t y) const;
};

}  // namespace lamplight::walk
