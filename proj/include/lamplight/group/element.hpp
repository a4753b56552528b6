#pragma once

#include "lamplight/group/group_spec.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lamplight::group {

struct LampEntry;
struct WreathData;

/// Immutable group element. Atoms are C2 bits and Z / Z^2 vectors; a wreath
/// element is a canonical sparse lamp configuration (sorted by point, no
/// identity lamps) plus a base position. Copies share the wreath payload, and
/// equality, ordering and hashing are structural.
class Element {
public:
    using Kind = GroupSpec::Kind;

    Element() = default;  // the C2 identity

    static Element c2(bool on);
    static Element line(std::int64_t x);
    static Element grid(std::int64_t x, std::int64_t y);
    /// Builds (lamps, position) in canonical form: entries are sorted, lamps
    /// equal to the identity are dropped. Duplicate points are an error.
    static Element wreath(std::vector<LampEntry> lamps, Element position);

    Kind kind() const noexcept { return kind_; }
    std::int64_t x() const noexcept { return x_; }
    std::int64_t y() const noexcept { return y_; }
    bool on() const noexcept { return x_ != 0; }

    /// Wreath accessors; empty span / throw for atoms.
    std::span<const LampEntry> lamps() const noexcept;
    const Element& position() const;

    /// Lamp value at `point`, or nullptr when the lamp is the identity.
    const Element* lamp_at(const Element& point) const noexcept;

    bool is_identity() const noexcept;
    std::size_t hash() const noexcept { return hash_; }

    friend bool operator==(const Element& a, const Element& b) noexcept;
    friend std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept;

private:
    Kind kind_ = Kind::CyclicTwo;
    std::int64_t x_ = 0;
    std::int64_t y_ = 0;
    std::size_t hash_ = 0x51ED27;
    std::shared_ptr<const WreathData> wreath_;

    void rehash() noexcept;
};

struct LampEntry {
    Element point;
    Element value;
};

struct WreathData {
    std::vector<LampEntry> lamps;
    Element position;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

/// A generator of the symmetric generating set: atom generators of C2 / Z /
/// Z^2, and for L wr G the switches (delta_s, 1) and moves (1, u).
struct Generator {
    enum class Kind { Atom, Move, Switch };
    Kind kind;
    std::string label;
    Element element;
};

Element identity(const GroupSpec& spec);

/// True when `e` is a canonical element of `spec`.
bool belongs_to(const Element& e, const GroupSpec& spec) noexcept;

/// Product (w, g)(xi, k) = (w(.) xi(g^-1 .), gk). Throws SpecMismatch when an
/// operand is not an element of `spec`.
Element multiply(const GroupSpec& spec, const Element& a, const Element& b);
Element inverse(const GroupSpec& spec, const Element& a);

/// Symmetric generating set, built recursively (switches first, then moves).
std::vector<Generator> generators(const GroupSpec& spec);

/// `x` with the lamp at base point `point` replaced by `value`.
Element with_lamp(const GroupSpec& spec, const Element& x, const Element& point, const Element& value);

/// Word length of atoms (C2: 0/1, Z: |x|, Z^2: L1 norm). Throws for wreaths.
std::int64_t atom_length(const Element& e);

std::string to_string(const Element& e);

namespace detail {
// Unchecked arithmetic for hot loops whose operands are known to be valid.
Element mul(const Element& a, const Element& b);
Element inv(const Element& a);
}  // namespace detail

inline std::span<const LampEntry> Element::lamps() const noexcept {
    if (!wreath_) return {};
    return wreath_->lamps;
}

}  // namespace lamplight::group
