#include "lamplight/group/word_length.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/parallel.hpp"
#include "lamplight/walk/experiments.hpp"
#include "lamplight/walk/walker.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lamplight::walk {

using group::Element;
using group::GroupSpec;

std::map<Element, double> lazy_lamp_law(const GroupSpec& lamp, std::size_t k) {
    if (lamp.is_wreath()) throw SpecMismatch("lazy lamp law needs an atom lamp group");
    const auto mu = uniform_measure(lamp);
    std::map<Element, double> law{{group::identity(lamp), 1.0}};
    for (std::size_t step = 0; step < k; ++step) {
        std::map<Element, double> next;
        for (const auto& [v, p] : law) {
            next[v] += 0.5 * p;
            for (const auto& a : mu.atoms()) next[group::detail::mul(v, a.element)] += 0.5 * p * a.probability;
        }
        law = std::move(next);
    }
    return law;
}

LampLawReport lamp_law_at_return(const GroupSpec& spec, std::size_t k, std::int64_t r, std::size_t trials,
                                 std::uint64_t seed) {
    if (!spec.is_wreath() || spec.lamp().is_wreath() || !spec.base().is_lattice())
        throw SpecMismatch("lamp law needs (C2 | Z | Z2) wr (Z | Z2), got " + spec.to_string());
    if (r < 1) throw ParameterError("radius must be >= 1");
    const auto measure = uniform_measure(spec);
    const Element start = group::identity(spec);

    struct Sample {
        Element lamp;
        bool accepted = true;
    };
    auto samples = run_trials<Sample>(trials, [&](std::size_t t) {
        Rng rng(trial_seed(seed, t));
        Walker w(measure, start);
        std::size_t done = 0;
        bool rejected = false;
        while (done < k && !rejected) {
            const auto kind = w.step(rng);  // a step taken from the origin
            ++done;
            if (kind != Walker::Step::Move) continue;
            while (!w.at_origin()) {
                if (w.base_distance() > r) {
                    rejected = true;
                    break;
                }
                w.step(rng);
            }
        }
        Sample s{w.origin_lamp(), !rejected};
        for (; done < k; ++done) {
            const std::size_t i = measure.sample(rng);
            if (i == measure.atoms().size()) continue;
            const auto& e = measure.atoms()[i].element;
            if (!e.lamps().empty()) s.lamp = group::detail::mul(s.lamp, e.lamps()[0].value);
        }
        return s;
    });

    const auto exact = lazy_lamp_law(spec.lamp(), k);
    std::set<Element> support;
    for (const auto& [v, p] : exact) support.insert(v);
    for (const auto& s : samples) support.insert(s.lamp);

    LampLawReport rep;
    rep.k = k;
    rep.r = r;
    rep.trials = trials;
    rep.values.assign(support.begin(), support.end());
    const std::size_t n = rep.values.size();
    rep.accepted_counts.assign(n, 0.0);
    rep.rejected_counts.assign(n, 0.0);
    for (const auto& v : rep.values) {
        auto it = exact.find(v);
        rep.exact.push_back(it == exact.end() ? 0.0 : it->second);
    }
    for (const auto& s : samples) {
        auto col = static_cast<std::size_t>(std::lower_bound(rep.values.begin(), rep.values.end(), s.lamp) - rep.values.begin());
        (s.accepted ? rep.accepted_counts : rep.rejected_counts)[col] += 1.0;
        rep.accepted += s.accepted ? 1 : 0;
    }
    if (rep.accepted < 100)
        throw ParameterError("only " + std::to_string(rep.accepted) + " accepted trials; need >= 100");
    rep.goodness_of_fit = stats::chi_square_gof(rep.accepted_counts, rep.exact);
    std::vector<double> table(rep.accepted_counts);
    table.insert(table.end(), rep.rejected_counts.begin(), rep.rejected_counts.end());
    rep.independence = stats::chi_square_independence(table, 2, n);
    rep.independence_powered = rep.independence.dof > 0;
    return rep;
}

namespace {

// Tracks visits to the base origin and excursion heights along one path.
struct ExcursionTracker {
    std::size_t k = 0;
    std::int64_t r = 0;
    std::vector<Element> visits;
    std::vector<std::int64_t> heights;
    std::int64_t height = 0;

    enum class State { Running, Done, Exited };

    // `state` is only read when the walk is at the origin.
    template <class StateFn>
    State observe(std::int64_t distance, bool at_origin, StateFn&& state) {
        if (distance > r) return State::Exited;
        height = std::max(height, distance);
        if (!at_origin) return State::Running;
        if (!visits.empty()) heights.push_back(height);
        visits.push_back(state());
        height = 0;
        return visits.size() == k + 1 ? State::Done : State::Running;
    }

    bool degenerate() const {
        return std::all_of(heights.begin(), heights.end(), [](std::int64_t h) { return h == 0; });
    }

    // W V with V the highest excursion (last on ties).
    Element exchanged() const {
        std::size_t i = 0;
        for (std::size_t j = 0; j < heights.size(); ++j)
            if (heights[j] >= heights[i]) i = j;
        const Element v = group::detail::mul(group::detail::inv(visits[i]), visits[i + 1]);
        const Element w = group::detail::mul(group::detail::mul(visits[i], group::detail::inv(visits[i + 1])), visits.back());
        return group::detail::mul(w, v);
    }
};

double total_variation(const std::map<Element, double>& p, const std::map<Element, double>& q) {
    double sp = 0.0, sq = 0.0;
    for (const auto& [e, m] : p) sp += m;
    for (const auto& [e, m] : q) sq += m;
    if (sp == 0.0 || sq == 0.0) return 0.0;
    std::set<Element> keys;
    for (const auto& [e, m] : p) keys.insert(e);
    for (const auto& [e, m] : q) keys.insert(e);
    double tv = 0.0;
    for (const auto& e : keys) {
        auto a = p.find(e), b = q.find(e);
        tv += std::abs((a == p.end() ? 0.0 : a->second / sp) - (b == q.end() ? 0.0 : b->second / sq));
    }
    return 0.5 * tv;
}

}  // namespace

SwapReport excursion_swap_check(const GroupSpec& spec, std::size_t k, std::int64_t horizon, SwapMode mode,
                                std::size_t trials, std::uint64_t seed, std::int64_t r) {
    if (k == 0) throw ParameterError("k must be >= 1");
    if (horizon < 0) throw ParameterError("horizon must be >= 0");
    if (!spec.is_wreath()) throw SpecMismatch("excursion exchange needs a wreath product");
    const auto measure = uniform_measure(spec);
    const Element start = group::identity(spec);
    std::map<Element, double> direct, swapped;
    SwapReport rep;

    if (mode == SwapMode::Exhaustive) {
        const double branches = static_cast<double>(measure.atoms().size() + (measure.laziness() > 0 ? 1 : 0));
        if (std::pow(branches, static_cast<double>(horizon)) > 2e6) throw CapExceeded("path enumeration exceeds 2e6 sequences");
        auto at_origin = [&](const Element& x) { return x.position().is_identity(); };
        auto dist = [&](const Element& x) { return group::base_distance(x.position()); };
        std::function<void(const Element&, std::int64_t, double, ExcursionTracker)> dfs =
            [&](const Element& x, std::int64_t t, double weight, ExcursionTracker tr) {
                auto s = tr.observe(dist(x), at_origin(x), [&] { return x; });
                if (s == ExcursionTracker::State::Exited) return;
                if (s == ExcursionTracker::State::Done) {
                    if (tr.degenerate()) return;
                    direct[x] += weight;
                    swapped[tr.exchanged()] += weight;
                    rep.event_mass += weight;
                    ++rep.samples;
                    return;
                }
                if (t == horizon) return;
                for (const auto& a : measure.atoms()) dfs(group::detail::mul(x, a.element), t + 1, weight * a.probability, tr);
                if (measure.laziness() > 0) dfs(x, t + 1, weight * measure.laziness(), tr);
            };
        dfs(start, 0, 1.0, ExcursionTracker{k, r, {}, {}, 0});
    } else {
        if (trials == 0) throw ParameterError("trials must be > 0");
        struct Sample {
            bool ok = false;
            Element direct, swapped;
        };
        auto samples = run_trials<Sample>(trials, [&](std::size_t t) {
            Rng rng(trial_seed(seed, t));
            Walker w(measure, start);
            ExcursionTracker tr{k, r, {}, {}, 0};
            for (;;) {
                auto s = tr.observe(w.base_distance(), w.at_origin(), [&] { return w.state(); });
                if (s == ExcursionTracker::State::Exited) return Sample{};
                if (s == ExcursionTracker::State::Done) {
                    if (tr.degenerate()) return Sample{};
                    return Sample{true, tr.visits.back(), tr.exchanged()};
                }
                if (w.time() == horizon) return Sample{};
                w.step(rng);
            }
        });
        for (const auto& s : samples) {
            if (!s.ok) continue;
            direct[s.direct] += 1.0;
            swapped[s.swapped] += 1.0;
            ++rep.samples;
        }
        rep.event_mass = static_cast<double>(rep.samples) / static_cast<double>(trials);
    }
    rep.tv = total_variation(direct, swapped);
    std::set<Element> keys;
    for (const auto& [e, m] : direct) keys.insert(e);
    for (const auto& [e, m] : swapped) keys.insert(e);
    rep.support = keys.size();
    return rep;
}

Estimate stopped_value_expectation(const StepMeasure& measure, const ElementFunction& h, const Element& x,
                                   std::size_t k, std::int64_t r, std::size_t trials, std::uint64_t seed,
                                   const std::optional<Element>& lamp_override) {
    if (trials == 0) throw ParameterError("trials must be > 0");
    if (r < 0) throw ParameterError("radius must be >= 0");
    const auto& spec = measure.spec();
    if (lamp_override && !spec.is_wreath()) throw SpecMismatch("lamp override needs a wreath product");
    auto values = run_trials<double>(trials, [&](std::size_t t) {
        Rng rng(trial_seed(seed, t));
        Walker w(measure, x);
        std::size_t visits = 0;
        for (;;) {
            if (w.base_distance() > r) break;
            if (w.at_origin() && ++visits == k + 1) break;
            w.step(rng);
        }
        Element stopped = w.state();
        if (lamp_override) stopped = group::with_lamp(spec, stopped, group::identity(spec.base()), *lamp_override);
        return h(stopped);
    });
    stats::RunningMean acc;
    for (double v : values) acc.add(v);
    return {acc.mean(), acc.std_error(), trials};
}

}  // namespace lamplight::walk
