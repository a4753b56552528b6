#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"

#include <cstddef>
#include <cstdint>
#include <unordered_map>

namespace lamplight::group {

enum class WordMode {
    ExactLine,  ///< closed form on C2 wr Z
    ExactTour,  ///< shortest lamp tour by Held-Karp on a lattice (or C2) base, few lamps
    Bounds,     ///< certified sandwich on a lattice (or C2) base
    Bfs,        ///< breadth-first search in the Cayley graph, radius-capped
};

struct WordLength {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    bool exact() const noexcept { return lower == upper; }
};

struct WordLengthOptions {
    int bfs_radius_cap = 10;
    std::size_t bfs_node_cap = 4'000'000;
    std::size_t tour_lamp_cap = 8;
};

/// Word length |a| with respect to the recursive generating set.
///
/// ExactLine: |supp| + 2A + 2B - |n| with -A = min(supp u {0, n}) and
/// B = max(supp u {0, n}); requires spec = C2 wr Z.
/// ExactTour / Bounds: sum of lamp lengths plus the shortest (respectively a
/// bracketed) walk from the origin through every lit point to the position.
/// Bfs: exact graph distance, CapExceeded past `bfs_radius_cap`.
WordLength word_length(const GroupSpec& spec, const Element& a, WordMode mode, const WordLengthOptions& options = {});

using Ball = std::unordered_map<Element, int, ElementHash>;

/// Every element within `radius` of the identity, with its distance.
Ball bfs_ball(const GroupSpec& spec, int radius, std::size_t node_cap = 4'000'000);

/// Distance of an atom-group element from the identity (lattice L1 / C2 bit).
std::int64_t base_distance(const Element& point);

}  // namespace lamplight::group
