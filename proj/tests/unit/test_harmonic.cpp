#include "lamplight/group/word_length.hpp"
#include "lamplight/harmonic/harmonic.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/walk/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace lamplight;
using namespace lamplight::harmonic;
using group::Element;
using group::GroupSpec;
using group::parse_group_spec;

namespace {

std::shared_ptr<const kernel::KernelTable> paper_table(std::int64_t radius) {
    return std::make_shared<const kernel::KernelTable>(kernel::build_kernel_table(radius, 1e-10, kernel::Normalization::Paper));
}

Element grid_state(bool origin_on, std::int64_t x, std::int64_t y, std::vector<std::pair<std::int64_t, std::int64_t>> extra = {}) {
    std::vector<group::LampEntry> lamps;
    if (origin_on) lamps.push_back({Element::grid(0, 0), Element::c2(true)});
    for (auto [px, py] : extra) lamps.push_back({Element::grid(px, py), Element::c2(true)});
    return Element::wreath(std::move(lamps), Element::grid(x, y));
}

Element random_element(const GroupSpec& spec, Rng& rng, int steps) {
    auto gens = group::generators(spec);
    Element x = group::identity(spec);
    for (int i = 0; i < steps; ++i) x = group::multiply(spec, x, gens[rng.below(gens.size())].element);
    return x;
}

}  // namespace

TEST_CASE("evaluation examples") {
    auto h = HarmonicFunction::lamp_sign_times_kernel(paper_table(40));
    CHECK(h(grid_state(false, 1, 0)) == 1.5);
    CHECK(h(grid_state(true, 0, 0)) == -0.5);
    CHECK(h(group::identity(h.spec())) == 0.5);
    CHECK_THROWS_AS(h(grid_state(false, 41, 0)), ParameterError);
    CHECK_THROWS_AS(h(Element::grid(1, 0)), SpecMismatch);

    auto c2z = parse_group_spec("C2 wr Z");
    auto b = HarmonicFunction::base_coordinate(c2z);
    Element x = Element::wreath({{Element::line(-3), Element::c2(true)}, {Element::line(9), Element::c2(true)}}, Element::line(7));
    CHECK(b(x) == 7.0);
    CHECK_THROWS_AS(HarmonicFunction::lamp_sign_times_kernel(
                        std::make_shared<const kernel::KernelTable>(kernel::build_kernel_table(5))),
                    SpecMismatch);
}

TEST_CASE("residuals") {
    auto h = HarmonicFunction::lamp_sign_times_kernel(paper_table(40));
    const double acc = h.table()->accuracy;
    CHECK(harmonicity_residual(h, h.measure(), grid_state(false, 0, 0)) <= 8 * acc);
    CHECK(harmonicity_residual(h, h.measure(), grid_state(true, 0, 0)) <= 8 * acc);
    CHECK(harmonicity_residual(h, h.measure(), grid_state(false, 3, 2, {{1, 1}, {-4, 2}})) <= 8 * acc);
    CHECK(harmonicity_residual(h, h.measure(), grid_state(true, 3, 2)) <= 8 * acc);

    auto c = HarmonicFunction::constant(parse_group_spec("(C2 wr Z) wr Z2"), 4.0);
    Rng rng(1);
    for (int i = 0; i < 20; ++i) CHECK(harmonicity_residual(c, c.measure(), random_element(c.spec(), rng, 15)) == 0.0);

    auto b = HarmonicFunction::base_coordinate(parse_group_spec("C2 wr Z2"), 1);
    for (int i = 0; i < 20; ++i) CHECK(harmonicity_residual(b, b.measure(), random_element(b.spec(), rng, 15)) == 0.0);
}

TEST_CASE("exhaustive residual scan and lamp independence") {
    auto h = HarmonicFunction::lamp_sign_times_kernel(paper_table(31));
    CHECK(max_lamp_kernel_residual(h, 30) <= 1e-8);
    CHECK_THROWS_AS(max_lamp_kernel_residual(h, 31), ParameterError);

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        auto x = static_cast<std::int64_t>(rng.below(21)) - 10;
        auto y = static_cast<std::int64_t>(rng.below(21)) - 10;
        std::vector<std::pair<std::int64_t, std::int64_t>> extra;
        for (int j = 0; j < 5; ++j) {
            std::int64_t px = static_cast<std::int64_t>(rng.below(9)) - 4, py = static_cast<std::int64_t>(rng.below(9)) - 4;
            if ((px != 0 || py != 0) && std::find(extra.begin(), extra.end(), std::pair{px, py}) == extra.end())
                extra.emplace_back(px, py);
        }
        bool on = rng.coin();
        REQUIRE(h(grid_state(on, x, y, extra)) == h(grid_state(on, x, y)));
    }
}

TEST_CASE("growth profiles") {
    auto c2z = parse_group_spec("C2 wr Z");
    std::vector<std::int64_t> radii{0, 1, 2, 5, 17};
    auto b = growth_profile(HarmonicFunction::base_coordinate(c2z), radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(b[i].lower == static_cast<double>(radii[i]));
        CHECK(b[i].upper == static_cast<double>(radii[i]));
    }
    auto c = growth_profile(HarmonicFunction::constant(c2z, 1.0), radii);
    CHECK(c[4].upper == 0.0);

    std::vector<std::int64_t> small{0, 1, 2, 3, 4, 5};
    auto exact = growth_profile(HarmonicFunction::base_coordinate(c2z), small, GrowthMode::Exact);
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(exact[i].lower == static_cast<double>(small[i]));

    // certified bracket against the exact Cayley ball on C2 wr Z2
    auto h = HarmonicFunction::lamp_sign_times_kernel(paper_table(10));
    std::vector<std::int64_t> tiny{0, 1, 2, 3, 4};
    auto ex = growth_profile(h, tiny, GrowthMode::Exact);
    auto ce = growth_profile(h, tiny, GrowthMode::Certified);
    for (std::size_t i = 0; i < tiny.size(); ++i) {
        CHECK(ce[i].lower <= ex[i].lower + 1e-12);
        CHECK(ex[i].upper <= ce[i].upper + 1e-12);
    }
    // r = 1: switching the origin lamp gives |-1/2 - 1/2| = 1; one move gives a(1, 0) = 1
    CHECK(ce[1].lower == doctest::Approx(1.0));
    CHECK_THROWS_AS(growth_profile(h, std::vector<std::int64_t>{11}), ParameterError);
}

TEST_CASE("lamp override") {
    auto spec = parse_group_spec("C2 wr Z");
    auto id = group::identity(spec);
    CHECK(lamp_override(spec, id, Element::c2(true)) == Element::wreath({{Element::line(0), Element::c2(true)}}, Element::line(0)));
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        auto x = random_element(spec, rng, 1 + static_cast<int>(rng.below(20)));
        Element l = Element::c2(rng.coin());
        auto y = lamp_override(spec, x, l);
        Element current = x.lamp_at(Element::line(0)) ? Element::c2(true) : Element::c2(false);
        REQUIRE(lamp_override(spec, x, current) == x);
        REQUIRE(lamp_override(spec, y, Element::c2(!l.on())) == lamp_override(spec, x, Element::c2(!l.on())));
        auto lx = group::word_length(spec, x, group::WordMode::ExactLine).lower;
        auto ly = group::word_length(spec, y, group::WordMode::ExactLine).lower;
        REQUIRE(ly <= lx + group::atom_length(l));
    }
    CHECK_THROWS_AS(lamp_override(spec, id, Element::line(1)), SpecMismatch);
}

TEST_CASE("tabulated functions on the line are affine") {
    auto z = GroupSpec::line();
    std::map<Element, double> affine, bent;
    for (std::int64_t n = -20; n <= 20; ++n) {
        affine[Element::line(n)] = 3.0 * static_cast<double>(n) + 1.0;
        bent[Element::line(n)] = static_cast<double>(n * n);
    }
    auto h = HarmonicFunction::tabulated(walk::uniform_measure(z), affine);
    CHECK(line_increment_spread(h, -20, 19) == 0.0);
    CHECK_THROWS_AS(HarmonicFunction::tabulated(walk::uniform_measure(z), bent), SpecMismatch);
}

TEST_CASE("optional stopping for the log-harmonic function") {
    auto h = HarmonicFunction::lamp_sign_times_kernel(paper_table(25));
    auto id = group::identity(h.spec());
    auto e = walk::stopped_value_expectation(h.measure(), std::cref(h), id, 1, 20, 20000, 3);
    CHECK(std::abs(e.value - 0.5) < 3 * e.std_error);
}

TEST_CASE("descriptors round trip") {
    auto j = to_json(HarmonicFunction::base_coordinate(parse_group_spec("C2 wr Z2"), 1));
    auto h = harmonic_from_json(j);
    CHECK(h.kind() == HarmonicFunction::Kind::BaseCoordinate);
    CHECK(h.axis() == 1);
    auto k = harmonic_from_json(nlohmann::json{{"kind", "lamp-sign-kernel"}, {"radius", 12}});
    CHECK(k(grid_state(false, 1, 0)) == 1.5);
    nlohmann::json tab{{"kind", "tabulated"}, {"group", "Z"}, {"values", {{0, 0.0}, {1, 2.0}, {2, 4.0}}}};
    CHECK(harmonic_from_json(tab)(Element::line(2)) == 4.0);
    CHECK_THROWS_AS(harmonic_from_json(nlohmann::json{{"kind", "nope"}, {"group", "Z"}}), ParameterError);
    CHECK_THROWS_AS(harmonic_from_json(nlohmann::json{{"group", "Z"}}), ParameterError);
}
