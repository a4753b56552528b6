#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/group/serialize.hpp"
#include "lamplight/group/word_length.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/rng.hpp"

#include <doctest.h>

using namespace lamplight;
using namespace lamplight::group;

namespace {

Element lamplighter(std::vector<std::int64_t> lit, std::int64_t pos) {
    std::vector<LampEntry> lamps;
    for (auto p : lit) lamps.push_back({Element::line(p), Element::c2(true)});
    return Element::wreath(std::move(lamps), Element::line(pos));
}

Element random_element(const GroupSpec& spec, Rng& rng, int steps) {
    auto gens = generators(spec);
    Element x = identity(spec);
    for (int i = 0; i < steps; ++i) x = multiply(spec, x, gens[rng.below(gens.size())].element);
    return x;
}

}  // namespace

TEST_CASE("group expressions parse and print") {
    auto s = parse_group_spec("C2 wr Z");
    CHECK(s.is_wreath());
    CHECK(s.lamp().kind() == GroupSpec::Kind::CyclicTwo);
    CHECK(s.base().kind() == GroupSpec::Kind::IntegerLine);
    CHECK(s.to_string() == "C2 wr Z");

    auto nested = parse_group_spec("(C2 wr Z2) wr Z2");
    CHECK(nested.depth() == 2);
    CHECK(nested.lamp() == parse_group_spec("C2 wr Z2"));
    CHECK(parse_group_spec(nested.to_string()) == nested);

    // left associative
    auto left = parse_group_spec("C2 wr Z wr Z");
    CHECK(left.lamp() == parse_group_spec("C2 wr Z"));
    auto right = parse_group_spec("C2 wr (Z wr Z)");
    CHECK(right.to_string() == "C2 wr (Z wr Z)");
    CHECK_FALSE(left == right);
}

TEST_CASE("parse errors carry offsets") {
    auto offset_of = [](std::string_view text) {
        try {
            parse_group_spec(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.offset());
        }
        return -1L;
    };
    CHECK(offset_of("C2 wr") == 5);
    CHECK(offset_of("") == 0);
    CHECK(offset_of("C3") == 0);
    CHECK(offset_of("(C2 wr Z") == 8);
    CHECK(offset_of("Z Z") == 2);
}

TEST_CASE("wreath multiplication examples") {
    auto spec = parse_group_spec("C2 wr Z");
    auto a = lamplighter({0}, 2);
    auto b = lamplighter({1}, -1);
    // (w, g)(xi, k): xi is shifted by g = 2, so the lamp at 1 lands at 3
    CHECK(multiply(spec, a, b) == lamplighter({0, 3}, 1));
    // lamps at the same point cancel
    auto c = lamplighter({-2}, 0);
    CHECK(multiply(spec, a, c) == lamplighter({}, 2));

    CHECK(inverse(spec, a) == lamplighter({-2}, -2));
    CHECK(inverse(spec, lamplighter({0}, 0)) == lamplighter({0}, 0));

    CHECK(multiply(spec, lamplighter({0}, 0), lamplighter({}, 1)) == lamplighter({0}, 1));
    CHECK(multiply(spec, lamplighter({}, 1), lamplighter({0}, 0)) == lamplighter({1}, 1));
    CHECK(multiply(spec, a, inverse(spec, a)).is_identity());
}

TEST_CASE("generators") {
    auto spec = parse_group_spec("C2 wr Z");
    auto gens = generators(spec);
    REQUIRE(gens.size() == 3);
    CHECK(gens[0].kind == Generator::Kind::Switch);
    CHECK(gens[0].element == lamplighter({0}, 0));
    CHECK(gens[1].kind == Generator::Kind::Move);

    auto nested = parse_group_spec("(C2 wr Z) wr Z2");
    // 3 switches from the lamp generators, 4 moves
    CHECK(generators(nested).size() == 7);
}

TEST_CASE("invalid operands are rejected") {
    auto spec = parse_group_spec("C2 wr Z");
    CHECK_THROWS_AS(multiply(spec, Element::grid(1, 0), identity(spec)), SpecMismatch);
    CHECK_THROWS_AS(Element::wreath({{Element::line(0), Element::c2(true)}, {Element::line(0), Element::c2(true)}},
                                    Element::line(0)),
                    SpecMismatch);
}

TEST_CASE("word lengths on the lamplighter line") {
    auto spec = parse_group_spec("C2 wr Z");
    CHECK(word_length(spec, identity(spec), WordMode::ExactLine).lower == 0);
    CHECK(word_length(spec, lamplighter({3}, 3), WordMode::ExactLine).lower == 4);
    CHECK(word_length(spec, lamplighter({-1}, 0), WordMode::ExactLine).lower == 3);
    CHECK(word_length(spec, lamplighter({0}, 1), WordMode::ExactLine).lower == 2);
    // lamps at 0 and 1, end at 1: switch, move, switch
    CHECK(word_length(spec, lamplighter({0, 1}, 1), WordMode::ExactLine).lower == 3);
    // lamp at 1, end at 0: move, switch, move back
    CHECK(word_length(spec, lamplighter({1}, 0), WordMode::ExactLine).lower == 3);
    CHECK(word_length(spec, lamplighter({-1, 1}, 0), WordMode::ExactLine).lower == 6);
    CHECK(word_length(spec, lamplighter({2}, -1), WordMode::ExactLine).lower == 2 + 1 + 3);
}

TEST_CASE("closed form matches breadth-first search on a ball") {
    auto spec = parse_group_spec("C2 wr Z");
    auto ball = bfs_ball(spec, 8);
    CHECK(ball.size() == 490);
    for (const auto& [e, d] : ball) {
        auto w = word_length(spec, e, WordMode::ExactLine);
        REQUIRE(w.lower == d);
        auto t = word_length(spec, e, WordMode::ExactTour);
        REQUIRE(t.lower == d);
    }
}

TEST_CASE("bounds bracket exact lengths on C2 wr Z2") {
    auto spec = parse_group_spec("C2 wr Z2");
    auto ball = bfs_ball(spec, 6);
    for (const auto& [e, d] : ball) {
        auto b = word_length(spec, e, WordMode::Bounds);
        REQUIRE(b.lower <= d);
        REQUIRE(d <= b.upper);
        if (e.lamps().size() <= 6) REQUIRE(word_length(spec, e, WordMode::ExactTour).lower == d);
    }
}

TEST_CASE("nested wreath word lengths") {
    auto spec = parse_group_spec("(C2 wr Z) wr Z");
    auto ball = bfs_ball(spec, 5);
    for (const auto& [e, d] : ball) {
        REQUIRE(word_length(spec, e, WordMode::Bfs).lower == d);
    }
    WordLengthOptions tight;
    tight.bfs_radius_cap = 2;
    CHECK_THROWS_AS(word_length(parse_group_spec("C2 wr Z"), lamplighter({5}, 5), WordMode::Bfs, tight), CapExceeded);
}

TEST_CASE("associativity and inverses on random triples") {
    Rng rng(2024);
    for (const char* text : {"C2 wr Z", "C2 wr Z2", "(C2 wr Z) wr Z", "Z wr Z2", "(C2 wr Z2) wr Z2"}) {
        auto spec = parse_group_spec(text);
        for (int i = 0; i < 200; ++i) {
            auto a = random_element(spec, rng, 12);
            auto b = random_element(spec, rng, 12);
            auto c = random_element(spec, rng, 12);
            REQUIRE(multiply(spec, multiply(spec, a, b), c) == multiply(spec, a, multiply(spec, b, c)));
            REQUIRE(multiply(spec, a, inverse(spec, a)) == identity(spec));
            REQUIRE(multiply(spec, identity(spec), a) == a);
        }
    }
}

TEST_CASE("json round trip") {
    Rng rng(7);
    auto spec = parse_group_spec("(C2 wr Z) wr Z2");
    for (int i = 0; i < 100; ++i) {
        auto a = random_element(spec, rng, 20);
        auto j = to_json(a);
        REQUIRE(element_from_json(spec, j) == a);
        REQUIRE(canonical_key(a) == j.dump());
    }
    CHECK(to_json(lamplighter({1}, 2)).dump() == R"({"lamps":[[1,1]],"position":2})");
    CHECK_THROWS_AS(element_from_json(parse_group_spec("C2 wr Z"), nlohmann::json::parse("[1,2]")), SpecMismatch);
}
