#include <doctest.h>

#include "lamplight/entropy/distribution.hpp"
#include "lamplight/entropy/walk_entropy.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/group/serialize.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/rng.hpp"

#include <cmath>
#include <vector>

using namespace lamplight;
using namespace lamplight::entropy;

namespace {

walk::StepMeasure lamplighter_line() {
    const auto spec = group::parse_group_spec("C2 wr Z");
    return walk::move_or_switch(walk::uniform_measure(spec.lamp()), walk::uniform_measure(spec.base()));
}

std::vector<double> random_table(Rng& rng, std::size_t n) {
    std::vector<double> t(n);
    double s = 0.0;
    for (auto& x : t) s += (x = rng.uniform() < 0.2 ? 0.0 : rng.uniform() + 1e-3);
    if (s == 0.0) t[0] = s = 1.0;
    for (auto& x : t) x /= s;
    return t;
}

}  // namespace

TEST_CASE("entropy and divergences on small examples") {
    const std::vector<double> m{0.5, 0.25, 0.25};
    CHECK(entropy::entropy(FiniteDistribution::from_masses(m)) == doctest::Approx(1.039721).epsilon(1e-6));
    CHECK(entropy::entropy(FiniteDistribution::from_masses(std::vector<double>{1.0})) == 0.0);

    const std::vector<double> half{0.5, 0.5}, quarter{0.25, 0.75};
    const auto a = FiniteDistribution::from_masses(half), b = FiniteDistribution::from_masses(quarter);
    CHECK(kl_divergence(a, b) == doctest::Approx(0.143841).epsilon(1e-6));
    CHECK(kl_divergence(a, a) == 0.0);
    CHECK(std::isinf(kl_divergence(a, FiniteDistribution::from_masses(std::vector<double>{1.0}))));

    const FiniteDistribution p({{"a", 0.3}, {"b", 0.7}}), q({{"c", 0.6}, {"d", 0.4}});
    CHECK(dbtv(p, q) == doctest::Approx(2.0));
    CHECK(dbtv(p, p) == 0.0);

    CHECK_THROWS_AS(FiniteDistribution({{"a", 0.5}, {"a", 0.5}}), ParameterError);
    CHECK_THROWS_AS(FiniteDistribution({{"a", 0.5}, {"b", 0.4}}), ParameterError);
    const FiniteDistribution in_x({{"a", 1.0}}, "X"), in_y({{"a", 1.0}}, "Y");
    CHECK_THROWS_AS(kl_divergence(in_x, in_y), SpecMismatch);
}

TEST_CASE("chain rule and mutual information identities on random joints") {
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const std::size_t rows = 2 + rng.below(5), cols = 2 + rng.below(5);
        const auto table = random_table(rng, rows * cols);
        const auto j = JointDistribution::from_table(table, rows, cols);
        CHECK(joint_entropy(j) == doctest::Approx(entropy::entropy(j.y()) + conditional_entropy(j)).epsilon(1e-10));
        CHECK(mutual_information(j) == doctest::Approx(mutual_information_direct(j)).epsilon(1e-10));
        CHECK(mutual_information(j) >= -1e-12);
        // symmetry: transpose
        std::vector<double> tr(table.size());
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) tr[c * rows + r] = table[r * cols + c];
        CHECK(mutual_information(JointDistribution::from_table(tr, cols, rows)) ==
              doctest::Approx(mutual_information(j)).epsilon(1e-10));
    }
}

TEST_CASE("exact lamplighter walk law at n = 0, 1, 2") {
    const auto m = lamplighter_line();
    const auto& spec = m.spec();
    CHECK(exact_walk_distribution(m, 0).mass.size() == 1);
    const auto one = exact_walk_distribution(m, 1);
    CHECK(one.mass.size() == 3);
    CHECK(entropy::entropy(one.finite(spec)) == doctest::Approx(1.039721).epsilon(1e-6));

    const auto two = exact_walk_distribution(m, 2);
    REQUIRE(two.mass.size() == 7);
    auto f = two.finite(spec);
    double total = 0.0;
    for (const auto& [k, p] : f.outcomes()) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    using group::Element;
    const auto on = Element::c2(true);
    auto at = [&](std::vector<group::LampEntry> l, std::int64_t x) {
        return f.mass(group::canonical_key(Element::wreath(std::move(l), Element::line(x))));
    };
    CHECK(at({}, 0) == doctest::Approx(0.375));
    CHECK(at({{Element::line(0), on}}, 1) == doctest::Approx(0.125));
    CHECK(at({{Element::line(0), on}}, -1) == doctest::Approx(0.125));
    CHECK(at({{Element::line(1), on}}, 1) == doctest::Approx(0.125));
    CHECK(at({{Element::line(-1), on}}, -1) == doctest::Approx(0.125));
    CHECK(at({}, 2) == doctest::Approx(0.0625));
    CHECK(at({}, -2) == doctest::Approx(0.0625));
    // 3/8 ln(8/3) + 1/2 ln 8 + 1/8 ln 16, from the masses above
    const double h2 = 0.375 * std::log(8.0 / 3.0) + 0.5 * std::log(8.0) + 0.125 * std::log(16.0);
    CHECK(h2 == doctest::Approx(1.7541053).epsilon(1e-7));
    CHECK(entropy::entropy(f) == doctest::Approx(h2).epsilon(1e-12));

    CHECK_THROWS_AS(exact_walk_distribution(m, 12, 100), CapExceeded);
}

TEST_CASE("entropy sequence increments") {
    const auto s = entropy_sequence(lamplighter_line(), 10);
    REQUIRE(s.H.size() == 11);
    CHECK(s.H[1] == doctest::Approx(1.039721).epsilon(1e-6));
    CHECK(s.H[2] == doctest::Approx(1.7541053).epsilon(1e-7));
    CHECK(s.delta[2] == doctest::Approx(0.7143846).epsilon(1e-7));
    CHECK(s.delta[2] < s.delta[1]);
    CHECK(s.increments_nonincreasing);
    CHECK(s.scaled_increment_bound);
    for (std::size_t n = 1; n <= 10; ++n) CHECK(s.delta[n] > 0.0);

    const auto curve = harmonic_growth_lower_curve(s.H);
    CHECK(curve.size() == 10);
    CHECK(curve[1] == doctest::Approx(std::sqrt(2.0 / 1.7541053)).epsilon(1e-7));
    const std::vector<double> free_like{0.0, 1.0, 2.0, 3.0};
    for (double c : harmonic_growth_lower_curve(free_like)) CHECK(c == doctest::Approx(1.0));
    const std::vector<double> bad{0.0, 0.0};
    CHECK_THROWS_AS(harmonic_growth_lower_curve(bad), ParameterError);
}

TEST_CASE("binomial entropy matches direct summation") {
    for (std::int64_t m : {0, 1, 2, 10, 40}) {
        double h = 0.0, c = 1.0;
        for (std::int64_t k = 0; k <= m; ++k) {
            const double p = c * std::pow(0.5, static_cast<double>(m));
            if (p > 0.0) h -= p * std::log(p);
            c = c * static_cast<double>(m - k) / static_cast<double>(k + 1);
        }
        CHECK(binomial_half_entropy(m) == doctest::Approx(h).epsilon(1e-12));
    }
}

TEST_CASE("inequality suite has no violations") {
    AuditConfig cfg;
    cfg.fuzz_trials = 10'000;
    cfg.seed = 3;
    const auto report = check_inequality_suite(cfg);
    REQUIRE(report.size() == 5);
    for (const auto& r : report) {
        INFO(r.inequality);
        CHECK(r.violations == 0);
        CHECK(r.trials > 0);
        CHECK(r.max_ratio <= 1.0 + 1e-12);
    }
    CHECK(report[0].trials == 10'000);
    CHECK(report[3].trials == 10);
    CHECK(report[4].trials == 2000);
    // n = 2 instance of the walk audit: lhs 1/4, rhs 4 * 1 * 0.7143846.
    CHECK(report[3].notes[1].find("lhs=0.250000") != std::string::npos);
    CHECK(report[3].notes[1].find("rhs=2.857538") != std::string::npos);
    const auto j = to_json(report[0]);
    CHECK(j.contains("max_ratio"));
    CHECK(j["seed"] == 3);
}
