#include "lamplight/util/errors.hpp"
#include "lamplight/util/parallel.hpp"
#include "lamplight/walk/experiments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>

namespace lamplight::walk {

using group::Element;

namespace {

enum class Outcome { Escaped, Glued, Running };

// One coupled step on the compact state (shared base position, glue flag).
// Draws exactly one value from `rng` so the full-element trace can replay it.
struct Pair {
    std::int64_t pos = 0;
    bool glued = false;
};

int draw(Rng& rng) { return static_cast<int>(rng.below(4)); }

void advance(Pair& p, int u) {
    if (p.pos == 0 && !p.glued && u < 2) {
        p.glued = true;  // (switch, lazy) or (lazy, switch)
        return;
    }
    if (u == 2) --p.pos;
    if (u == 3) ++p.pos;
}

Outcome status(const Pair& p, std::int64_t r) {
    if (std::llabs(p.pos) >= r) return Outcome::Escaped;
    if (p.glued) return Outcome::Glued;
    return Outcome::Running;
}

void check_radius(std::int64_t r) {
    if (r < 1) throw ParameterError("coupling radius must be >= 1");
}

}  // namespace

Estimate coupled_gluing_experiment(std::int64_t r, std::size_t trials, std::uint64_t seed) {
    check_radius(r);
    if (trials == 0) throw ParameterError("trials must be > 0");
    auto escaped = run_trials<char>(trials, [&](std::size_t t) -> char {
        Rng rng(trial_seed(seed, t));
        Pair p;
        for (;;) {
            advance(p, draw(rng));
            auto s = status(p, r);
            if (s != Outcome::Running) return s == Outcome::Escaped;
        }
    });
    std::size_t hits = 0;
    for (char e : escaped) hits += static_cast<std::size_t>(e);
    Estimate est;
    est.trials = trials;
    est.value = static_cast<double>(hits) / static_cast<double>(trials);
    est.std_error = stats::proportion_std_error(est.value, trials);
    return est;
}

double coupled_gluing_exact(std::int64_t r) {
    check_radius(r);
    const auto n = static_cast<Eigen::Index>(2 * r - 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    auto idx = [r](std::int64_t p) { return static_cast<Eigen::Index>(p + r - 1); };
    for (std::int64_t p = -(r - 1); p <= r - 1; ++p) {
        const auto i = idx(p);
        // at the origin half the mass glues; elsewhere lazy and switch hold
        if (p != 0) m(i, i) -= 0.5;
        for (std::int64_t q : {p - 1, p + 1}) {
            if (std::llabs(q) >= r) b(i) += 0.25;
            else m(i, idx(q)) -= 0.25;
        }
    }
    Eigen::VectorXd x = m.partialPivLu().solve(b);
    return x(idx(0));
}

CouplingTrace coupled_trace(std::int64_t r, std::uint64_t seed, std::int64_t max_steps) {
    check_radius(r);
    const auto spec = group::GroupSpec::wreath(group::GroupSpec::cyclic_two(), group::GroupSpec::line());
    const Element flip = Element::wreath({{Element::line(0), Element::c2(true)}}, Element::line(0));
    const Element left = Element::wreath({}, Element::line(-1));
    const Element right = Element::wreath({}, Element::line(1));
    const Element id = group::identity(spec);

    CouplingTrace tr;
    tr.first = id;
    tr.second = flip;
    Pair p;
    Rng rng(trial_seed(seed, 0));
    while (tr.steps < max_steps) {
        const int u = draw(rng);
        const bool origin_unglued = p.pos == 0 && !p.glued;
        const Element* a = &id;
        const Element* b = &id;
        if (origin_unglued && u == 0) a = &flip;
        else if (origin_unglued && u == 1) b = &flip;
        else if (u == 1) a = b = &flip;  // shared switch away from the origin or once glued
        else if (u >= 2) a = b = u == 2 ? &left : &right;
        tr.first = group::detail::mul(tr.first, *a);
        tr.second = group::detail::mul(tr.second, *b);
        advance(p, u);
        ++tr.steps;
        if (p.glued && !tr.glued_at) tr.glued_at = tr.steps;
        const bool same_base = tr.first.position() == tr.second.position() && tr.first.position().x() == p.pos;
        if (!same_base || (tr.first == tr.second) != p.glued) tr.invariant_held = false;
        if (std::llabs(p.pos) >= r) {
            tr.escaped = !p.glued;
            break;
        }
    }
    return tr;
}

ScalingFit gluing_scaling(std::span<const std::int64_t> radii, std::size_t trials, std::uint64_t seed) {
    ScalingFit out;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        auto est = coupled_gluing_experiment(radii[i], trials, splitmix64(seed + i));
        out.radii.push_back(radii[i]);
        out.estimates.push_back(est);
        if (est.value > 0.0) {
            lx.push_back(std::log(static_cast<double>(radii[i])));
            ly.push_back(std::log(est.value));
        }
    }
    if (lx.size() >= 2) out.fit = stats::fit_line(lx, ly);
    return out;
}

}  // namespace lamplight::walk
