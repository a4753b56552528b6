#include "lamplight/growth/entropy_growth.hpp"

#include "lamplight/entropy/walk_entropy.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/parallel.hpp"
#include "lamplight/util/rng.hpp"
#include "lamplight/walk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace lamplight::growth {

using group::Element;
using group::GroupSpec;

std::size_t VisitProfile::at_least(double threshold) const noexcept {
    std::size_t c = 0;
    for (const auto& [z, k] : counts) c += static_cast<double>(k) >= threshold;
    return c;
}

std::int64_t VisitProfile::total() const noexcept {
    std::int64_t s = 0;
    for (const auto& [z, k] : counts) s += k;
    return s;
}

namespace {

bool is_grid(const GroupSpec& base) {
    if (base.kind() == GroupSpec::Kind::IntegerGrid) return true;
    if (base.kind() == GroupSpec::Kind::IntegerLine) return false;
    throw SpecMismatch("visit profiles need a Z or Z^2 base, got " + base.to_string());
}

std::uint64_t pack(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
}

/// Visit counts keyed by packed position, in first-visit order.
struct RawVisits {
    std::vector<std::uint64_t> keys;
    std::vector<std::int64_t> counts;
    std::size_t last = 0;  ///< slot of z_n
};

RawVisits simulate(bool grid, std::int64_t n, Rng& rng) {
    RawVisits out;
    std::unordered_map<std::uint64_t, std::uint32_t> slot;
    slot.reserve(static_cast<std::size_t>(std::min<std::int64_t>(n + 1, 1 << 20)));
    std::int64_t x = 0, y = 0;
    auto visit = [&] {
        const auto key = pack(x, y);
        auto [it, fresh] = slot.try_emplace(key, static_cast<std::uint32_t>(out.counts.size()));
        if (fresh) {
            out.keys.push_back(key);
            out.counts.push_back(0);
        }
        ++out.counts[it->second];
        out.last = it->second;
    };
    visit();
    // 2 or 3 bits per step: hold / direction
    std::uint64_t bits = 0;
    int left = 0;
    auto take = [&](int k) {
        if (left < k) {
            bits = rng.next();
            left = 64;
        }
        const auto v = bits & ((1u << k) - 1);
        bits >>= k;
        left -= k;
        return v;
    };
    for (std::int64_t t = 0; t < n; ++t) {
        if (grid) {
            const auto v = take(3);
            if (v < 4) {
                x += v == 0 ? 1 : v == 1 ? -1 : 0;
                y += v == 2 ? 1 : v == 3 ? -1 : 0;
            }
        } else {
            const auto v = take(2);
            if (v < 2) x += v == 0 ? 1 : -1;
        }
        visit();
    }
    return out;
}

Element unpack(bool grid, std::uint64_t key) {
    const auto x = static_cast<std::int64_t>(static_cast<std::int32_t>(key >> 32));
    const auto y = static_cast<std::int64_t>(static_cast<std::int32_t>(key & 0xffffffffu));
    return grid ? Element::grid(x, y) : Element::line(x);
}

walk::Estimate summarize(std::span<const double> v) {
    stats::RunningMean m;
    for (double x : v) m.add(x);
    return {m.mean(), m.std_error(), v.size()};
}

void check_n(std::int64_t n) {
    if (n < 0) throw ParameterError("n must be >= 0");
    if (n > (std::int64_t{1} << 30)) throw CapExceeded("n above 2^30");
}

/// Histogram k -> #{z : K_n(z) = k} per trial. With `lamp_steps` the count at
/// z_n drops by one: the lamp at z moves only at times t < n spent at z.
std::vector<std::map<std::int64_t, std::int64_t>> histograms(bool grid, std::int64_t n, std::size_t trials,
                                                             std::uint64_t seed, bool lamp_steps = false) {
    return run_trials<std::map<std::int64_t, std::int64_t>>(trials, [&](std::size_t t) {
        Rng rng(trial_seed(seed, t));
        auto raw = simulate(grid, n, rng);
        if (lamp_steps) --raw.counts[raw.last];
        std::map<std::int64_t, std::int64_t> h;
        for (auto k : raw.counts)
            if (k > 0) ++h[k];
        if (h.empty()) h[0] = 1;
        return h;
    });
}

}  // namespace

VisitProfile visit_count_profile(const GroupSpec& base, std::int64_t n, std::uint64_t seed) {
    const bool grid = is_grid(base);
    check_n(n);
    Rng rng(seed);
    const auto raw = simulate(grid, n, rng);
    VisitProfile p;
    p.n = n;
    for (std::size_t i = 0; i < raw.keys.size(); ++i) p.counts.emplace(unpack(grid, raw.keys[i]), raw.counts[i]);
    return p;
}

VisitSummary visit_summary(const GroupSpec& base, std::int64_t n, std::size_t trials, std::uint64_t seed) {
    const bool grid = is_grid(base);
    check_n(n);
    if (trials < 2) throw ParameterError("need at least 2 trials");
    const double threshold = n > 0 ? std::log(static_cast<double>(n)) : 0.0;
    const auto hs = histograms(grid, n, trials, seed);
    std::vector<double> distinct, thick;
    for (const auto& h : hs) {
        double d = 0.0, th = 0.0;
        for (const auto& [k, c] : h) {
            d += static_cast<double>(c);
            if (static_cast<double>(k) >= threshold) th += static_cast<double>(c);
        }
        distinct.push_back(d);
        thick.push_back(th);
    }
    return {summarize(distinct), summarize(thick)};
}

std::vector<double> lamp_entropy_table(const GroupSpec& lamp, std::int64_t k_max, std::size_t support_cap) {
    if (k_max < 0) throw ParameterError("k_max must be >= 0");
    std::vector<double> h(static_cast<std::size_t>(k_max) + 1, 0.0);
    switch (lamp.kind()) {
        case GroupSpec::Kind::CyclicTwo:
            // one lazy step already gives the uniform law on C2
            for (std::size_t k = 1; k < h.size(); ++k) h[k] = std::numbers::ln2;
            return h;
        case GroupSpec::Kind::IntegerLine:
            // lazy +-1 walk: Y_k = Binomial(2k, 1/2) - k
            for (std::size_t k = 1; k < h.size(); ++k) h[k] = entropy::binomial_half_entropy(2 * static_cast<std::int64_t>(k));
            return h;
        default: {
            const auto measure = walk::lazy(walk::uniform_measure(lamp), 0.5);
            const auto seq = entropy::entropy_sequence(measure, static_cast<std::size_t>(k_max), support_cap);
            return seq.H;
        }
    }
}

walk::Estimate conditional_entropy_lower_bound(const GroupSpec& lamp, const GroupSpec& base, std::int64_t n,
                                               std::size_t trials, std::uint64_t seed) {
    const bool grid = is_grid(base);
    check_n(n);
    if (trials < 2) throw ParameterError("need at least 2 trials");
    const auto hs = histograms(grid, n, trials, seed, true);
    std::int64_t k_max = 0;
    for (const auto& h : hs) k_max = std::max(k_max, h.rbegin()->first);
    const auto table = lamp_entropy_table(lamp, k_max);
    std::vector<double> sums;
    for (const auto& h : hs) {
        double s = 0.0;
        for (const auto& [k, c] : h) s += static_cast<double>(c) * table[static_cast<std::size_t>(k)];
        sums.push_back(s);
    }
    return summarize(sums);
}

double iterated_log(double n, int k) {
    for (int i = 0; i < k; ++i) {
        if (!(n > 0.0)) throw ParameterError("iterated log of a nonpositive value");
        n = std::log(n);
    }
    return n;
}

namespace {

const GroupSpec& c2() {
    static const GroupSpec s = group::parse_group_spec("C2");
    return s;
}
const GroupSpec& z2() {
    static const GroupSpec s = group::parse_group_spec("Z2");
    return s;
}

struct Value {
    double mean = 0.0, se = 0.0;
};

Value lower_curve(int depth, std::int64_t n, std::size_t trials, std::uint64_t seed) {
    if (depth == 1) {
        const auto e = conditional_entropy_lower_bound(c2(), z2(), n, trials, seed);
        return {e.value, e.std_error};
    }
    if (n < 2) throw ParameterError("recursion needs n >= 2");
    const auto m = static_cast<std::int64_t>(std::ceil(std::log(static_cast<double>(n))));
    const auto thick = visit_summary(z2(), n, trials, splitmix64(seed + 1)).thick;
    const Value inner = lower_curve(depth - 1, m, trials, splitmix64(seed + 2));
    const double mean = thick.value * inner.mean;
    double rel = 0.0;
    if (thick.value > 0.0) rel += std::pow(thick.std_error / thick.value, 2);
    if (inner.mean > 0.0) rel += std::pow(inner.se / inner.mean, 2);
    return {mean, std::abs(mean) * std::sqrt(rel)};
}

}  // namespace

std::vector<GrowthRow> iterated_growth_experiment(int depth, std::span<const std::int64_t> ns, std::size_t trials,
                                                  std::uint64_t seed) {
    if (depth > kMaxDepth) throw CapExceeded("depth cap is " + std::to_string(kMaxDepth));
    if (depth < 1) throw ParameterError("depth must be >= 1");
    std::vector<GrowthRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::int64_t n = ns[i];
        const double ref_den = iterated_log(static_cast<double>(n), depth);
        if (!(ref_den > 0.0)) throw ParameterError("log^(k) n must be positive for n = " + std::to_string(n));
        const Value v = lower_curve(depth, n, trials, splitmix64(seed + i));
        GrowthRow r;
        r.n = n;
        r.estimate = v.mean;
        r.std_error = v.se;
        r.reference = static_cast<double>(n) / ref_den;
        r.ratio = r.estimate / r.reference;
        rows.push_back(r);
    }
    return rows;
}

std::vector<DirectCheckRow> depth2_direct_check(std::span<const std::int64_t> ns, std::size_t trials,
                                                std::uint64_t seed) {
    std::vector<DirectCheckRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::int64_t n = ns[i];
        if (n < 2 || n > 1024) throw ParameterError("direct depth-2 check needs 2 <= n <= 2^10");
        const auto s = splitmix64(seed + i);
        const auto hs = histograms(true, n, trials, s, true);
        std::int64_t k_max = 0;
        for (const auto& h : hs) k_max = std::max(k_max, h.rbegin()->first);
        std::vector<double> lower1(static_cast<std::size_t>(k_max) + 1, 0.0);
        for (std::int64_t k = 1; k <= k_max; ++k)
            lower1[static_cast<std::size_t>(k)] =
                conditional_entropy_lower_bound(c2(), z2(), k, trials, splitmix64(s + 7 + static_cast<std::uint64_t>(k))).value;
        std::vector<double> sums;
        for (const auto& h : hs) {
            double v = 0.0;
            for (const auto& [k, c] : h) v += static_cast<double>(c) * lower1[static_cast<std::size_t>(k)];
            sums.push_back(v);
        }
        const auto direct = summarize(sums);
        const std::int64_t one[] = {n};
        const auto rec = iterated_growth_experiment(2, one, trials, s);
        rows.push_back({n, direct.value, rec.front().estimate, direct.std_error});
    }
    return rows;
}

std::vector<SandwichRow> depth1_sandwich(std::span<const std::int64_t> ns, std::size_t trials, std::uint64_t seed) {
    // base step of move-or-switch on C2 wr Z^2: hold 1/2, each neighbour 1/8
    const double step_entropy = 0.5 * std::log(2.0) + 0.5 * std::log(8.0);
    const double animal = std::log(3.0 * std::numbers::e);
    std::vector<SandwichRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::int64_t n = ns[i];
        const auto range = visit_summary(z2(), n, trials, splitmix64(seed + i)).distinct.value;
        const double nd = static_cast<double>(n);
        const double lamps = std::numbers::ln2 * range;
        const double shape = std::min(range * animal, nd * step_entropy);
        rows.push_back({n, lamps, lamps + shape + std::log(nd + 1.0) + std::log(std::max(range, 1.0))});
    }
    return rows;
}

stats::LineFit exponent_fit(std::span<const GrowthRow> rows) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
        if (r.n <= 0 || !(r.estimate > 0.0)) throw ParameterError("exponent fit needs positive n and estimates");
        x.push_back(std::log(static_cast<double>(r.n)));
        y.push_back(std::log(r.estimate));
    }
    return stats::fit_line(x, y);
}

bool nondecreasing_within_error(std::span<const GrowthRow> rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double slack = 2.0 * std::hypot(rows[i].std_error, rows[i - 1].std_error);
        if (rows[i].estimate < rows[i - 1].estimate - slack) return false;
    }
    return true;
}

}  // namespace lamplight::growth
