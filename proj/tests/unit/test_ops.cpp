#include <doctest.h>

#include "lamplight/ops/operators.hpp"
#include "lamplight/util/errors.hpp"

#include <cmath>
#include <numeric>
#include <vector>

using namespace lamplight;
using namespace lamplight::ops;

namespace {

// d^m b(k) = sum_i C(m, i) (-1)^i b(k + i), straight from the definition.
double direct_difference(const BinomialTable& b, int m, std::int64_t k) {
    double s = 0.0, c = 1.0;
    for (int i = 0; i <= m; ++i) {
        s += (i % 2 ? -c : c) * b(k + i);
        c = c * (m - i) / (i + 1);
    }
    return s;
}

}  // namespace

TEST_CASE("binomial table") {
    const BinomialTable b(10, 0.3);
    CHECK(std::accumulate(b.masses.begin(), b.masses.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b(3) == doctest::Approx(120 * std::pow(0.3, 3) * std::pow(0.7, 7)).epsilon(1e-13));
    CHECK(b(-1) == 0.0);
    CHECK(b(11) == 0.0);
    const BinomialTable h(9, 0.5);
    for (int k = 0; k <= 9; ++k) CHECK(h(k) == doctest::Approx(h(9 - k)).epsilon(1e-14));
    CHECK(b(3) != doctest::Approx(b(7)));
    CHECK_THROWS_AS(BinomialTable(-1, 0.5), ParameterError);
    CHECK_THROWS_AS(BinomialTable(3, 1.5), ParameterError);
}

TEST_CASE("finite differences") {
    const BinomialTable b(2, 0.5);
    const auto d0 = finite_difference(b, 0);
    CHECK(d0.first == 0);
    CHECK(d0.values == b.masses);

    const auto d1 = finite_difference(b, 1);
    CHECK(d1.first == -1);
    REQUIRE(d1.values.size() == 4);
    CHECK(d1.values == std::vector<double>{-0.25, -0.25, 0.25, 0.25});

    const auto d2 = finite_difference(b, 2);
    CHECK(d2.values == std::vector<double>{0.25, 0.0, -0.5, 0.0, 0.25});
    CHECK(d2.max_abs() == 0.5);

    const BinomialTable one(1, 0.5);
    CHECK(finite_difference(one, 1).max_abs() == 0.5);
    CHECK(derivative_bound(1, 0.5, 1) == doctest::Approx(2.0));
    CHECK(derivative_bound(2, 0.5, 2) == doctest::Approx(4.0));

    const BinomialTable big(37, 0.2);
    for (int m = 1; m <= 6; ++m) {
        const auto d = finite_difference(big, m);
        CHECK(std::accumulate(d.values.begin(), d.values.end(), 0.0) == doctest::Approx(0.0).epsilon(1e-14));
        for (std::int64_t k = -m; k <= 37; ++k) CHECK(d.at(k) == doctest::Approx(direct_difference(big, m, k)).epsilon(1e-13));
    }
}

TEST_CASE("derivative bound holds on the exhaustive grid") {
    std::vector<std::int64_t> ns(200);
    std::iota(ns.begin(), ns.end(), 1);
    std::vector<int> ms(10);
    std::iota(ms.begin(), ms.end(), 1);
    std::vector<double> ps;
    for (int i = 1; i <= 9; ++i) ps.push_back(i / 10.0);
    const auto audit = verify_derivative_bound(ns, ms, ps);
    CHECK(audit.cases == 200 * 10 * 9);
    CHECK(audit.violations == 0);
    CHECK(audit.max_ratio > 0.0);
    CHECK(audit.max_ratio <= 1.0);
    MESSAGE("tightest ratio " << audit.max_ratio << " at n=" << audit.worst_n << " m=" << audit.worst_m
                              << " p=" << audit.worst_p);
}

TEST_CASE("lazy power expansion on the 64-cycle") {
    const auto P = FiniteMarkovOperator::cycle(64);
    const auto r0 = lazy_power_expansion_check(P, 0.5, 0, 0);
    CHECK(r0.max_discrepancy() == 0.0);

    const auto r = lazy_power_expansion_check(P, 0.5, 40, 3);
    CHECK(r.expansion_discrepancy <= 1e-12);
    CHECK(r.difference_discrepancy <= 1e-12);
    CHECK(r.coefficient_sup <= r.coefficient_bound);
    CHECK(r.coefficient_bound == doctest::Approx(std::pow(3.0 / (0.25 * 40), 1.5)));

    for (double alpha : {0.1, 0.3, 0.8})
        for (int m : {0, 1, 2, 5}) {
            const auto s = lazy_power_expansion_check(P, alpha, 25, m);
            CHECK(s.max_discrepancy() <= 1e-12);
            CHECK(s.coefficient_sup <= s.coefficient_bound * (1 + 1e-12));
        }
    const auto j = to_json(r);
    CHECK(j["size"] == 64);
    CHECK(j["max_discrepancy"].get<double>() <= 1e-12);

    CHECK_THROWS_AS(lazy_power_expansion_check(P, 1.0, 3, 1), ParameterError);
    CHECK_THROWS_AS(FiniteMarkovOperator::cycle(300), ParameterError);
    CHECK_THROWS_AS(FiniteMarkovOperator(2, {0.5, 0.4, 0.5, 0.5}), ParameterError);
}

TEST_CASE("majorant decays for m > 2(C + 1)") {
    const auto s = majorant_decay_scan(5, 0.5, 3.0, 1.0, 10.0, 1e4);
    CHECK(s.decreasing);
    CHECK(s.ks.front() == doctest::Approx(10.0));
    CHECK(s.ks.back() == doctest::Approx(1e4));
    // below the threshold the majorant grows: m = 3, g = 0 gives k^(1/2).
    const auto edge = majorant_decay_scan(3, 0.5, 0.0, 1.0, 10.0, 1e4);
    CHECK_FALSE(edge.decreasing);
}

TEST_CASE("Laplacian drift of line functions") {
    const std::int64_t T = 1600;
    const auto id = LineFunction::tabulate(T, [](std::int64_t x) { return static_cast<double>(x); });
    const auto absf = LineFunction::tabulate(T, [](std::int64_t x) { return std::abs(static_cast<double>(x)); });
    const auto sq = LineFunction::tabulate(T, [](std::int64_t x) { return static_cast<double>(x * x); });

    const auto e = laplacian_drift_estimate(id, 400, 20000, 5);
    CHECK(std::abs(e.value) <= 4 * e.std_error);

    double prev = 1e9;
    for (std::int64_t t : {100, 400, 1600}) {
        const auto a = laplacian_drift_estimate(absf, t, 20000, 6);
        // E|X_t| ~ sqrt(2 t / pi)
        CHECK(a.value == doctest::Approx(std::sqrt(2.0 / (M_PI * t))).epsilon(0.03));
        CHECK(a.value < prev);
        prev = a.value;
    }
    for (std::int64_t t : {100, 1600}) {
        const auto q = laplacian_drift_estimate(sq, t, 20000, 7);
        CHECK(std::abs(q.value - 1.0) <= 4 * q.std_error);
    }
    CHECK_THROWS_AS(laplacian_drift_estimate(id, T + 1, 10, 1), ParameterError);
    CHECK_THROWS_AS(id(T + 1), ParameterError);
}
