#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace lamplight::group {

/// Recursive description of a group: C2, Z, Z^2, or a wreath product L wr G.
class GroupSpec {
public:
    enum class Kind { CyclicTwo, IntegerLine, IntegerGrid, Wreath };

    static GroupSpec cyclic_two();
    static GroupSpec line();
    static GroupSpec grid();
    static GroupSpec wreath(GroupSpec lamp, GroupSpec base);

    Kind kind() const noexcept { return kind_; }
    bool is_wreath() const noexcept { return kind_ == Kind::Wreath; }
    /// Z or Z^2.
    bool is_lattice() const noexcept { return kind_ == Kind::IntegerLine || kind_ == Kind::IntegerGrid; }

    /// Lamp and base groups; throw SpecMismatch unless this is a wreath.
    const GroupSpec& lamp() const;
    const GroupSpec& base() const;

    /// Number of nested wreath constructors (0 for C2, Z, Z2).
    std::size_t depth() const noexcept;

    /// Canonical expression, re-parseable by parse_group_spec.
    std::string to_string() const;

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept;

private:
    explicit GroupSpec(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::shared_ptr<const GroupSpec> lamp_;
    std::shared_ptr<const GroupSpec> base_;
};

/// Parses the group expression grammar
///
///     expr    := primary ("wr" primary)*      (left associative)
///     primary := "C2" | "Z" | "Z2" | "(" expr ")"
///
/// Throws ParseError carrying the byte offset of the first offending token
/// (the input length for truncated input).
GroupSpec parse_group_spec(std::string_view text);

}  // namespace lamplight::group
