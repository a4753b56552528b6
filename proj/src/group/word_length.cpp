#include "lamplight/group/word_length.hpp"

#include "lamplight/util/errors.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace lamplight::group {

namespace {

bool is_atom(const GroupSpec& spec) noexcept { return !spec.is_wreath(); }

std::int64_t atom_distance(const Element& p, const Element& q) {
    return atom_length(detail::mul(detail::inv(p), q));
}

WordLength lamp_length(const GroupSpec& lamp, const Element& value, WordMode mode, const WordLengthOptions& options) {
    if (is_atom(lamp)) {
        const std::int64_t len = atom_length(value);
        return {len, len};
    }
    return word_length(lamp, value, mode, options);
}

WordLength exact_line(const Element& a) {
    std::int64_t lo = 0, hi = 0;
    const std::int64_t n = a.position().x();
    lo = std::min(lo, n);
    hi = std::max(hi, n);
    for (const auto& entry : a.lamps()) {
        lo = std::min(lo, entry.point.x());
        hi = std::max(hi, entry.point.x());
    }
    const std::int64_t A = -lo;
    const std::int64_t B = hi;
    const std::int64_t len = static_cast<std::int64_t>(a.lamps().size()) + 2 * A + 2 * B - (n < 0 ? -n : n);
    return {len, len};
}

std::int64_t held_karp(const Element& origin, const std::vector<Element>& points, const Element& end) {
    const std::size_t m = points.size();
    if (m == 0) return atom_distance(origin, end);
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    const std::size_t full = (std::size_t{1} << m) - 1;
    std::vector<std::int64_t> dp((full + 1) * m, inf);
    std::vector<std::int64_t> d(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) d[i * m + j] = atom_distance(points[i], points[j]);
    for (std::size_t i = 0; i < m; ++i) dp[(std::size_t{1} << i) * m + i] = atom_distance(origin, points[i]);
    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::int64_t cur = dp[mask * m + i];
            if (cur >= inf || !(mask & (std::size_t{1} << i))) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (mask & (std::size_t{1} << j)) continue;
                auto& next = dp[(mask | (std::size_t{1} << j)) * m + j];
                next = std::min(next, cur + d[i * m + j]);
            }
        }
    }
    std::int64_t best = inf;
    for (std::size_t i = 0; i < m; ++i) best = std::min(best, dp[full * m + i] + atom_distance(points[i], end));
    return best;
}

std::int64_t greedy_tour(const Element& origin, std::vector<Element> points, const Element& end) {
    std::int64_t cost = 0;
    Element current = origin;
    while (!points.empty()) {
        std::size_t best = 0;
        std::int64_t best_d = atom_distance(current, points[0]);
        for (std::size_t i = 1; i < points.size(); ++i) {
            const std::int64_t d = atom_distance(current, points[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        cost += best_d;
        current = points[best];
        points.erase(points.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return cost + atom_distance(current, end);
}

WordLength tour_or_bounds(const GroupSpec& spec, const Element& a, WordMode mode, const WordLengthOptions& options) {
    if (!is_atom(spec.base()))
        throw SpecMismatch("word_length: tour and bounds modes need a lattice or C2 base, got " + spec.to_string());
    const Element origin = identity(spec.base());
    const Element& end = a.position();
    std::vector<Element> points;
    WordLength lamps{0, 0};
    for (const auto& entry : a.lamps()) {
        points.push_back(entry.point);
        const WordLength l = lamp_length(spec.lamp(), entry.value, mode, options);
        lamps.lower += l.lower;
        lamps.upper += l.upper;
    }
    if (mode == WordMode::ExactTour) {
        if (points.size() > options.tour_lamp_cap)
            throw CapExceeded("word_length: exact tour limited to " + std::to_string(options.tour_lamp_cap) + " lamps");
        const std::int64_t tour = held_karp(origin, points, end);
        return {lamps.lower + tour, lamps.upper + tour};
    }
    std::int64_t lower_tour = atom_distance(origin, end);
    for (const auto& p : points) lower_tour = std::max(lower_tour, atom_distance(origin, p) + atom_distance(p, end));
    return {lamps.lower + lower_tour, lamps.upper + greedy_tour(origin, points, end)};
}

}  // namespace

std::int64_t base_distance(const Element& point) { return atom_length(point); }

Ball bfs_ball(const GroupSpec& spec, int radius, std::size_t node_cap) {
    const auto gens = generators(spec);
    Ball ball;
    std::vector<Element> frontier{identity(spec)};
    ball.emplace(frontier.front(), 0);
    for (int d = 1; d <= radius && !frontier.empty(); ++d) {
        std::vector<Element> next;
        for (const auto& x : frontier) {
            for (const auto& g : gens) {
                Element y = detail::mul(x, g.element);
                if (ball.emplace(y, d).second) {
                    next.push_back(std::move(y));
                    if (ball.size() > node_cap) throw CapExceeded("bfs_ball: node cap exceeded");
                }
            }
        }
        frontier = std::move(next);
    }
    return ball;
}

WordLength word_length(const GroupSpec& spec, const Element& a, WordMode mode, const WordLengthOptions& options) {
    if (!belongs_to(a, spec)) throw SpecMismatch("word_length: element is not in " + spec.to_string());
    if (is_atom(spec)) {
        const std::int64_t len = atom_length(a);
        return {len, len};
    }
    switch (mode) {
        case WordMode::ExactLine:
            if (!(spec == GroupSpec::wreath(GroupSpec::cyclic_two(), GroupSpec::line())))
                throw SpecMismatch("word_length: exact-line mode requires C2 wr Z, got " + spec.to_string());
            return exact_line(a);
        case WordMode::ExactTour:
        case WordMode::Bounds: return tour_or_bounds(spec, a, mode, options);
        case WordMode::Bfs: break;
    }
    if (a.is_identity()) return {0, 0};
    const auto gens = generators(spec);
    Ball seen;
    std::vector<Element> frontier{identity(spec)};
    seen.emplace(frontier.front(), 0);
    for (int d = 1; d <= options.bfs_radius_cap; ++d) {
        std::vector<Element> next;
        for (const auto& x : frontier) {
            for (const auto& g : gens) {
                Element y = detail::mul(x, g.element);
                if (y == a) return {d, d};
                if (seen.emplace(y, d).second) {
                    next.push_back(std::move(y));
                    if (seen.size() > options.bfs_node_cap) throw CapExceeded("word_length: bfs node cap exceeded");
                }
            }
        }
        frontier = std::move(next);
    }
    throw CapExceeded("word_length: distance exceeds bfs radius cap " + std::to_string(options.bfs_radius_cap));
}

}  // namespace lamplight::group
