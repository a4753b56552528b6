#include "lamplight/entropy/walk_entropy.hpp"

#include "lamplight/group/serialize.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/rng.hpp"

#include <algorithm>
#include <cmath>

namespace lamplight::entropy {

using group::Element;

FiniteDistribution WalkDistribution::finite(const group::GroupSpec& spec) const {
    std::vector<std::pair<std::string, double>> o;
    o.reserve(mass.size());
    for (const auto& [e, m] : mass) o.emplace_back(group::canonical_key(e), m);
    return FiniteDistribution(std::move(o), spec.to_string());
}

namespace {

void convolve(std::map<Element, double>& mass, const walk::StepMeasure& measure, std::size_t support_cap) {
    std::map<Element, double> next;
    for (const auto& [x, p] : mass) {
        if (measure.laziness() > 0.0) next[x] += p * measure.laziness();
        for (const auto& a : measure.atoms()) next[group::detail::mul(x, a.element)] += p * a.probability;
        if (next.size() > support_cap) throw CapExceeded("walk support exceeds " + std::to_string(support_cap));
    }
    mass = std::move(next);
}

double entropy_of(const std::map<Element, double>& mass) {
    double h = 0.0;
    for (const auto& [x, p] : mass) h -= p * std::log(p);
    return h;
}

}  // namespace

WalkDistribution exact_walk_distribution(const walk::StepMeasure& measure, std::size_t n, std::size_t support_cap) {
    WalkDistribution d;
    d.mass[group::identity(measure.spec())] = 1.0;
    for (std::size_t step = 0; step < n; ++step) convolve(d.mass, measure, support_cap);
    return d;
}

EntropySequence entropy_sequence(const walk::StepMeasure& measure, std::size_t n_max, std::size_t support_cap) {
    EntropySequence s;
    WalkDistribution d;
    d.mass[group::identity(measure.spec())] = 1.0;
    s.H.push_back(0.0);
    s.delta.push_back(0.0);
    for (std::size_t n = 1; n <= n_max; ++n) {
        convolve(d.mass, measure, support_cap);
        const double h = entropy_of(d.mass);
        s.H.push_back(h);
        s.delta.push_back(h - s.H[n - 1]);
        if (n >= 2 && s.delta[n] > s.delta[n - 1] + 1e-12) s.increments_nonincreasing = false;
        if (static_cast<double>(n) * s.delta[n] > h + 1e-12) s.scaled_increment_bound = false;
    }
    return s;
}

std::vector<double> harmonic_growth_lower_curve(std::span<const double> H) {
    std::vector<double> out;
    for (std::size_t n = 1; n < H.size(); ++n) {
        if (!(H[n] > 0.0)) throw ParameterError("entropy must be positive for n >= 1");
        out.push_back(std::sqrt(static_cast<double>(n) / H[n]));
    }
    return out;
}

double binomial_half_entropy(std::int64_t m) {
    if (m < 0) throw ParameterError("binomial size must be >= 0");
    // log pmf by the ratio recurrence from the mode outwards would also do;
    // lgamma in long double is accurate to ~1e-18 relative here.
    const long double lm = std::lgamma(static_cast<long double>(m) + 1.0L) - static_cast<long double>(m) * std::log(2.0L);
    long double h = 0.0L;
    for (std::int64_t k = 0; k <= m; ++k) {
        const long double lp = lm - std::lgamma(static_cast<long double>(k) + 1.0L) -
                               std::lgamma(static_cast<long double>(m - k) + 1.0L);
        h -= std::exp(lp) * lp;
    }
    return static_cast<double>(h);
}

nlohmann::json to_json(const AuditResult& a) {
    nlohmann::json j{{"inequality", a.inequality}, {"trials", a.trials},  {"violations", a.violations},
                     {"max_ratio", a.max_ratio},   {"seed", a.seed}};
    if (!a.notes.empty()) j["notes"] = a.notes;
    return j;
}

namespace {

struct Tally {
    AuditResult& result;
    void record(double lhs, double rhs) {
        ++result.trials;
        if (lhs > rhs * (1.0 + 1e-12) + 1e-15) ++result.violations;
        if (rhs > 0.0) result.max_ratio = std::max(result.max_ratio, lhs / rhs);
    }
};

std::vector<double> random_masses(Rng& rng, std::size_t m, bool allow_zeros) {
    std::vector<double> w(m);
    double total = 0.0;
    for (auto& x : w) {
        x = allow_zeros && rng.below(5) == 0 ? 0.0 : -std::log(1.0 - rng.uniform());  // exponential weights
        total += x;
    }
    if (total == 0.0) {
        w[0] = 1.0;
        total = 1.0;
    }
    for (auto& x : w) x /= total;
    // renormalize the largest entry so the sum is 1 to rounding
    double s = 0.0;
    for (auto& x : w) s += x;
    *std::max_element(w.begin(), w.end()) += 1.0 - s;
    return w;
}

double expect(std::span<const double> p, std::span<const double> f, bool square = false) {
    double e = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * (square ? f[i] * f[i] : f[i]);
    return e;
}

}  // namespace

std::vector<AuditResult> check_inequality_suite(const AuditConfig& config) {
    if (config.max_outcomes < 2) throw ParameterError("max_outcomes must be >= 2");
    std::vector<AuditResult> out;
    Rng rng(config.seed);

    AuditResult lemma{"lemma: (Ef(X) - Ef(Y))^2 <= 2 D(X||Y) (Ef(X)^2 + Ef(Y)^2)", 0, 0, 0.0, config.seed, {}};
    AuditResult dbtv_kl{"dbtv(X, Y) <= 2 D(X||Y)", 0, 0, 0.0, config.seed, {}};
    {
        Tally tl{lemma}, td{dbtv_kl};
        for (std::size_t t = 0; t < config.fuzz_trials; ++t) {
            const std::size_t m = 2 + rng.below(config.max_outcomes - 1);
            auto p = random_masses(rng, m, true);
            auto q = random_masses(rng, m, true);
            std::vector<double> f(m);
            const bool constant = rng.below(20) == 0;
            const double c = rng.normal();
            for (auto& x : f) x = constant ? c : rng.normal();
            auto mu = FiniteDistribution::from_masses(p), nu = FiniteDistribution::from_masses(q);
            const double d = kl_divergence(mu, nu);
            const double diff = expect(p, f) - expect(q, f);
            tl.record(diff * diff, 2.0 * d * (expect(p, f, true) + expect(q, f, true)));
            td.record(dbtv(mu, nu), 2.0 * d);
        }
    }
    out.push_back(lemma);
    out.push_back(dbtv_kl);

    AuditResult corollary{"corollary: E|E[f(X)|Y] - Ef(X)| <= 2 sqrt(I(X,Y)) sqrt(Ef(X)^2)", 0, 0, 0.0, config.seed, {}};
    {
        Tally tc{corollary};
        for (std::size_t t = 0; t < config.fuzz_trials; ++t) {
            const std::size_t rows = 2 + rng.below(config.max_outcomes - 1);
            const std::size_t cols = 2 + rng.below(config.max_outcomes - 1);
            auto table = random_masses(rng, rows * cols, true);
            std::vector<double> f(rows);
            for (auto& x : f) x = rng.normal();
            auto joint = JointDistribution::from_table(table, rows, cols);
            std::vector<double> px(rows, 0.0), py(cols, 0.0);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) {
                    px[r] += table[r * cols + c];
                    py[c] += table[r * cols + c];
                }
            const double ef = expect(px, f);
            double lhs = 0.0;
            for (std::size_t c = 0; c < cols; ++c) {
                if (py[c] == 0.0) continue;
                double cond = 0.0;
                for (std::size_t r = 0; r < rows; ++r) cond += table[r * cols + c] * f[r];
                lhs += py[c] * std::abs(cond / py[c] - ef);
            }
            tc.record(lhs, 2.0 * std::sqrt(mutual_information(joint)) * std::sqrt(expect(px, f, true)));
        }
    }
    out.push_back(corollary);

    AuditResult prop{"proposition: (E|h(X_1) - h(z)|)^2 <= 4 E|h(X_n) - h(z)|^2 (H(X_n) - H(X_{n-1}))", 0, 0, 0.0,
                     config.seed, {}};
    {
        Tally tp{prop};
        const auto spec = group::parse_group_spec(config.walk_group);
        if (!spec.is_wreath()) throw ParameterError("walk audit needs a wreath product");
        const auto measure = walk::move_or_switch(walk::uniform_measure(spec.lamp()), walk::uniform_measure(spec.base()));
        auto h = config.harmonic ? config.harmonic : [](const Element& e) { return static_cast<double>(e.position().x()); };
        const Element z = group::identity(spec);
        const double hz = h(z);
        WalkDistribution d;
        d.mass[z] = 1.0;
        double first_abs = 0.0, h_prev = 0.0;
        for (std::size_t n = 1; n <= config.walk_n_max; ++n) {
            convolve(d.mass, measure, 2'000'000);
            double hn = 0.0, second = 0.0, abs1 = 0.0;
            for (const auto& [x, p] : d.mass) {
                hn -= p * std::log(p);
                const double v = h(x) - hz;
                second += p * v * v;
                abs1 += p * std::abs(v);
            }
            if (n == 1) first_abs = abs1;
            const double lhs = first_abs * first_abs;
            const double rhs = 4.0 * second * (hn - h_prev);
            tp.record(lhs, rhs);
            prop.notes.push_back("n=" + std::to_string(n) + " lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs));
            h_prev = hn;
        }
    }
    out.push_back(prop);

    AuditResult line{"line remark: lazy walk on Z, h(x) = x, proposition with exact binomial entropy", 0, 0, 0.0,
                     config.seed, {}};
    {
        // X_n = Bin(2n, 1/2) - n: E|X_1| = 1/2 and E X_n^2 = n/2.
        Tally tr{line};
        double h_prev = 0.0;
        for (std::size_t n = 1; n <= config.line_n_max; ++n) {
            const double hn = binomial_half_entropy(2 * static_cast<std::int64_t>(n));
            tr.record(0.25, 4.0 * (static_cast<double>(n) / 2.0) * (hn - h_prev));
            h_prev = hn;
        }
    }
    out.push_back(line);
    return out;
}

}  // namespace lamplight::entropy
