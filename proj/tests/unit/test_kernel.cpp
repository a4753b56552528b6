#include "lamplight/kernel/potential_kernel.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/rng.hpp"
#include "oracles/heat_series.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace lamplight;
using namespace lamplight::kernel;

TEST_CASE("small values against closed forms and the series oracle") {
    const double pi = std::numbers::pi;
    CHECK(potential_kernel(0, 0) == 0.0);
    CHECK(potential_kernel(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(potential_kernel(1, 1) == doctest::Approx(4.0 / pi).epsilon(1e-15));
    CHECK(potential_kernel(2, 0) == doctest::Approx(4.0 - 8.0 / pi).epsilon(1e-15));
    CHECK(potential_kernel(2, 1) == doctest::Approx(8.0 / pi - 1.0).epsilon(1e-15));
    CHECK(potential_kernel(-1, 0) == potential_kernel(1, 0));
    CHECK(potential_kernel(0, 1) == potential_kernel(1, 0));

    // frozen from the series oracle
    CHECK(oracle::potential_kernel(1, 1) == doctest::Approx(1.273239544735163).epsilon(1e-13));
    CHECK(oracle::potential_kernel(2, 0) == doctest::Approx(1.453520910529675).epsilon(1e-13));
    CHECK(oracle::potential_kernel(5, 3) == doctest::Approx(2.152758080652748).epsilon(1e-13));
}

TEST_CASE("recurrence agrees with the series oracle on random points") {
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        auto x = static_cast<std::int64_t>(rng.below(41)) - 20;
        auto y = static_cast<std::int64_t>(rng.below(41)) - 20;
        REQUIRE(potential_kernel(x, y) == doctest::Approx(oracle::potential_kernel(x, y)).epsilon(1e-10));
    }
}

TEST_CASE("kappa matches the series oracle at distance") {
    CHECK(kappa() == doctest::Approx(1.0293737057).epsilon(1e-10));
    // a(z) - (2/pi) ln|z| at |z| = 40 along the axis; correction is O(|z|^-2)
    double fitted = oracle::potential_kernel(40, 0, 1 << 16) - 2.0 / std::numbers::pi * std::log(40.0);
    CHECK(std::abs(fitted - kappa()) < 1e-4);
}

TEST_CASE("tables satisfy their invariants") {
    auto t = build_kernel_table(60, 1e-12);
    auto inv = scan_invariants(t);
    CHECK(inv.max_off_origin_residual <= 4 * t.accuracy);
    CHECK(std::abs(inv.origin_defect - 1.0) <= 4 * t.accuracy);
    CHECK(inv.max_symmetry_gap == 0.0);

    auto paper = build_kernel_table(10, 1e-12, Normalization::Paper);
    CHECK(paper.at(0, 0) == 0.5);
    CHECK(paper.at(1, 0) == 1.5);
    CHECK(paper.at(0, -1) == 1.5);
    CHECK(paper.standard_at(3, 4) + 0.5 == paper.at(3, 4));
    CHECK(paper.at(3, 4) == doctest::Approx(t.at(3, 4) + 0.5));
}

TEST_CASE("asymptotic deviation") {
    auto t = build_kernel_table(100);
    double d20 = asymptotic_deviation(t, 20);
    double d40 = asymptotic_deviation(t, 40);
    double d80 = asymptotic_deviation(t, 80);
    CHECK(d20 <= 0.01);
    CHECK(d40 < d20);
    CHECK(d80 < d40);
    CHECK(asymptotic_deviation(t, 20, kappa() + 0.1) >= 0.09);
    CHECK_THROWS_AS(asymptotic_deviation(build_kernel_table(20), 10), ParameterError);
}

TEST_CASE("limits") {
    CHECK_THROWS_AS(build_kernel_table(kRadiusCap + 1), CapExceeded);
    CHECK_THROWS_AS(potential_kernel(1, 0, 1e-14), ParameterError);
    CHECK_THROWS_AS(potential_kernel(kRadiusCap + 1, 0), ToleranceUnachievable);
    CHECK_NOTHROW(potential_kernel(kRadiusCap, kRadiusCap));
}

TEST_CASE("exports") {
    auto t = build_kernel_table(2, 1e-12, Normalization::Paper);
    std::ostringstream csv;
    write_csv(csv, t);
    CHECK(csv.str().rfind("x,y,value\n-2,-2,", 0) == 0);
    auto j = to_json(t);
    CHECK(j["header"]["normalization"] == "paper");
    CHECK(j["grid"].size() == 5);
    CHECK(j["grid"][2][2] == 0.5);
}
