#include <doctest.h>

#include "lamplight/entropy/walk_entropy.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/growth/entropy_growth.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/walk/measure.hpp"

#include <cmath>
#include <numbers>

using namespace lamplight;
using namespace lamplight::growth;

namespace {
const auto kLine = group::parse_group_spec("Z");
const auto kGrid = group::parse_group_spec("Z2");
const auto kC2 = group::parse_group_spec("C2");
}  // namespace

TEST_CASE("visit profiles") {
    const auto p0 = visit_count_profile(kGrid, 0, 1);
    CHECK(p0.distinct() == 1);
    CHECK(p0.counts.at(group::Element::grid(0, 0)) == 1);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto p = visit_count_profile(s % 2 ? kLine : kGrid, 500 + static_cast<std::int64_t>(s), s);
        CHECK(p.total() == p.n + 1);
        CHECK(p.distinct() <= static_cast<std::size_t>(p.n + 1));
    }
    CHECK_THROWS_AS(visit_count_profile(kC2, 5, 1), SpecMismatch);

    // thick points: the constant is unknown, so only a factor band
    const auto v = visit_summary(kGrid, 4096, 200, 3);
    const double scale = 4096.0 / std::log(4096.0);
    CHECK(v.thick.value >= 0.2 * scale);
    CHECK(v.thick.value <= 5.0 * scale);
}

TEST_CASE("lazy lamp entropies") {
    const auto c2 = lamp_entropy_table(kC2, 6);
    CHECK(c2[0] == 0.0);
    for (int k = 1; k <= 6; ++k) CHECK(c2[k] == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
    // closed forms agree with exact convolution of the lazy walk
    const auto conv = entropy::entropy_sequence(walk::lazy(walk::uniform_measure(kC2), 0.5), 6).H;
    for (int k = 0; k <= 6; ++k) CHECK(conv[k] == doctest::Approx(c2[k]).epsilon(1e-12));
    const auto z = lamp_entropy_table(kLine, 8);
    const auto zconv = entropy::entropy_sequence(walk::lazy(walk::uniform_measure(kLine), 0.5), 8).H;
    for (int k = 0; k <= 8; ++k) CHECK(zconv[k] == doctest::Approx(z[k]).epsilon(1e-12));
    const auto grid = lamp_entropy_table(kGrid, 5);
    CHECK(grid.size() == 6);
    CHECK(grid[1] == doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(8.0)));
    CHECK_THROWS_AS(lamp_entropy_table(kGrid, 60, 1000), CapExceeded);
}

TEST_CASE("conditional entropy lower bound") {
    CHECK(conditional_entropy_lower_bound(kC2, kLine, 0, 4, 1).value == 0.0);
    // with C2 lamps the bound is ln 2 times the range, less the final site when
    // it was first reached at time n
    const auto e = conditional_entropy_lower_bound(kC2, kLine, 300, 50, 9);
    const auto r = visit_summary(kLine, 300, 50, 9);
    CHECK(e.value <= std::numbers::ln2 * r.distinct.value + 1e-12);
    CHECK(e.value >= std::numbers::ln2 * (r.distinct.value - 1.0) - 1e-12);
    // Z lamps are at least as informative as C2 lamps
    CHECK(conditional_entropy_lower_bound(group::parse_group_spec("Z"), kLine, 300, 50, 9).value > e.value);

    std::vector<GrowthRow> rows;
    for (int k = 8; k <= 14; ++k) {
        const auto est = conditional_entropy_lower_bound(kC2, kLine, 1 << k, 400, 11 + k);
        rows.push_back({1 << k, est.value, est.std_error, 0.0, 0.0});
    }
    CHECK(nondecreasing_within_error(rows));
    CHECK(exponent_fit(rows).slope == doctest::Approx(0.5).epsilon(0.14));
}

TEST_CASE("iterated growth") {
    CHECK(iterated_log(std::pow(2.0, 16), 2) == doctest::Approx(2.406).epsilon(1e-3));
    const std::vector<std::int64_t> ns{1024, 4096, 16384};
    const auto d1 = iterated_growth_experiment(1, ns, 100, 5);
    REQUIRE(d1.size() == 3);
    for (const auto& r : d1) CHECK(r.reference == doctest::Approx(r.n / std::log(static_cast<double>(r.n))));
    CHECK(nondecreasing_within_error(d1));
    const auto direct = conditional_entropy_lower_bound(kC2, kGrid, 1024, 100, 0);
    CHECK(direct.value > 0.0);

    const auto d2 = iterated_growth_experiment(2, ns, 100, 6);
    for (const auto& r : d2) {
        CHECK(r.ratio >= 0.1);
        CHECK(r.ratio <= 10.0);
    }
    const std::vector<std::int64_t> small{16, 64};
    CHECK(iterated_growth_experiment(3, small, 20, 1).size() == 2);
    CHECK_THROWS_AS(iterated_growth_experiment(4, ns, 10, 1), CapExceeded);

    // the recursion keeps only thick points, so it sits below the direct G_2 sum
    const std::vector<std::int64_t> check_ns{64, 256};
    for (const auto& r : depth2_direct_check(check_ns, 100, 7)) CHECK(r.direct >= r.recursion);
    const std::vector<std::int64_t> too_big{2048};
    CHECK_THROWS_AS(depth2_direct_check(too_big, 10, 1), ParameterError);

    for (const auto& r : depth1_sandwich(ns, 50, 8)) CHECK(r.lower <= r.upper);
}
