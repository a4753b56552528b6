#include "lamplight/ops/operators.hpp"

#include "lamplight/simd/kernels.hpp"
#include "lamplight/util/errors.hpp"
#include "lamplight/util/parallel.hpp"
#include "lamplight/util/rng.hpp"
#include "lamplight/util/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace lamplight::ops {

BinomialTable::BinomialTable(std::int64_t n_, double p_) : n(n_), p(p_) {
    if (n < 0) throw ParameterError("binomial size must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("binomial p must lie in [0, 1]");
    masses.assign(static_cast<std::size_t>(n) + 1, 0.0);
    if (p == 0.0 || p == 1.0) {
        masses[p == 0.0 ? 0 : static_cast<std::size_t>(n)] = 1.0;
        return;
    }
    const long double lp = std::log(static_cast<long double>(p)), lq = std::log1p(-static_cast<long double>(p));
    const long double ln = std::lgamma(static_cast<long double>(n) + 1.0L);
    for (std::int64_t k = 0; k <= n; ++k) {
        const long double l = ln - std::lgamma(static_cast<long double>(k) + 1.0L) -
                              std::lgamma(static_cast<long double>(n - k) + 1.0L) + k * lp + (n - k) * lq;
        masses[static_cast<std::size_t>(k)] = static_cast<double>(std::exp(l));
    }
}

double BinomialTable::operator()(std::int64_t k) const noexcept {
    return k < 0 || k > n ? 0.0 : masses[static_cast<std::size_t>(k)];
}

double DifferenceSequence::at(std::int64_t k) const noexcept {
    const std::int64_t i = k - first;
    return i < 0 || i >= static_cast<std::int64_t>(values.size()) ? 0.0 : values[static_cast<std::size_t>(i)];
}

double DifferenceSequence::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

DifferenceSequence finite_difference(const BinomialTable& table, int m) {
    if (m < 0) throw ParameterError("difference order must be >= 0");
    // b on [-m, n + m]; each pass shortens the right end by one.
    std::vector<double> cur(static_cast<std::size_t>(table.n + 2 * m + 1), 0.0);
    std::copy(table.masses.begin(), table.masses.end(), cur.begin() + m);
    std::vector<double> next;
    for (int pass = 0; pass < m; ++pass) {
        next.resize(cur.size() - 1);
        simd::forward_difference(cur, next);
        cur.swap(next);
    }
    return {-m, std::move(cur)};
}

double derivative_bound(std::int64_t n, double p, int m) {
    if (m == 0) return 1.0;
    const double v = p * (1.0 - p) * static_cast<double>(n);
    if (v <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(static_cast<double>(m) / v, 0.5 * m);
}

DerivativeAudit verify_derivative_bound(std::span<const std::int64_t> ns, std::span<const int> ms,
                                        std::span<const double> ps) {
    DerivativeAudit audit;
    for (double p : ps)
        for (std::int64_t n : ns) {
            const BinomialTable b(n, p);
            for (int m : ms) {
                const double lhs = finite_difference(b, m).max_abs();
                const double bound = derivative_bound(n, p, m);
                ++audit.cases;
                if (lhs > bound * (1.0 + 1e-12)) ++audit.violations;
                const double ratio = std::isinf(bound) ? 0.0 : lhs / bound;
                if (ratio > audit.max_ratio) {
                    audit.max_ratio = ratio;
                    audit.worst_n = n;
                    audit.worst_m = m;
                    audit.worst_p = p;
                }
            }
        }
    return audit;
}

FiniteMarkovOperator::FiniteMarkovOperator(std::size_t size, std::vector<double> matrix)
    : size_(size), matrix_(std::move(matrix)) {
    if (size_ == 0 || size_ > kMaxSize)
        throw ParameterError("operator size must be in [1, " + std::to_string(kMaxSize) + "]");
    if (matrix_.size() != size_ * size_) throw ParameterError("matrix shape does not match size");
    for (std::size_t r = 0; r < size_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < size_; ++c) {
            const double v = matrix_[r * size_ + c];
            if (!(v >= 0.0)) throw ParameterError("negative transition probability");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-12) throw ParameterError("row " + std::to_string(r) + " does not sum to 1");
    }
}

FiniteMarkovOperator FiniteMarkovOperator::cycle(std::size_t order) {
    if (order < 2) throw ParameterError("cycle order must be >= 2");
    std::vector<double> m(order * order, 0.0);
    for (std::size_t i = 0; i < order; ++i) {
        m[i * order + (i + 1) % order] += 0.5;
        m[i * order + (i + order - 1) % order] += 0.5;
    }
    return FiniteMarkovOperator(order, std::move(m));
}

double ExpansionReport::max_discrepancy() const noexcept {
    return std::max(expansion_discrepancy, difference_discrepancy);
}

nlohmann::json to_json(const ExpansionReport& r) {
    return {{"identity", "lazy-power-expansion"},
            {"size", r.size},
            {"k", r.k},
            {"m", r.m},
            {"alpha", r.alpha},
            {"max_discrepancy", r.max_discrepancy()},
            {"expansion_discrepancy", r.expansion_discrepancy},
            {"difference_discrepancy", r.difference_discrepancy},
            {"coefficient_sup", r.coefficient_sup},
            {"coefficient_bound", r.coefficient_bound}};
}

namespace {

using Matrix = std::vector<double>;

Matrix identity_matrix(std::size_t n) {
    Matrix m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
    return m;
}

Matrix product(const Matrix& a, const Matrix& b, std::size_t n) {
    Matrix c(n * n);
    simd::matmul(a, b, c, n);
    return c;
}

}  // namespace

ExpansionReport lazy_power_expansion_check(const FiniteMarkovOperator& P, double alpha, std::int64_t k, int m) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
    if (k < 0 || m < 0) throw ParameterError("k and m must be >= 0");
    const std::size_t n = P.size();
    const Matrix& p = P.matrix();

    Matrix q = p;
    for (auto& v : q) v *= 1.0 - alpha;
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] += alpha;
    Matrix qk = identity_matrix(n);
    for (std::int64_t i = 0; i < k; ++i) qk = product(qk, q, n);

    Matrix i_minus_p = identity_matrix(n);
    simd::axpy(-1.0, p, i_minus_p);
    Matrix lhs2 = qk;
    for (int i = 0; i < m; ++i) lhs2 = product(i_minus_p, lhs2, n);

    const BinomialTable b(k, 1.0 - alpha);
    const auto d = finite_difference(b, m);
    // c_j = (-1)^m d^m b(j - m) for j = 0..k + m
    std::vector<double> c(static_cast<std::size_t>(k + m) + 1);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = (m % 2 ? -1.0 : 1.0) * d.at(static_cast<std::int64_t>(j) - m);

    Matrix sum1(n * n, 0.0), sum2(n * n, 0.0), pj = identity_matrix(n);
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (static_cast<std::int64_t>(j) <= k) simd::axpy(b(static_cast<std::int64_t>(j)), pj, sum1);
        simd::axpy(c[j], pj, sum2);
        if (j + 1 < c.size()) pj = product(pj, p, n);
    }

    ExpansionReport r;
    r.size = n;
    r.k = k;
    r.m = m;
    r.alpha = alpha;
    r.expansion_discrepancy = simd::max_abs_diff(qk, sum1);
    r.difference_discrepancy = simd::max_abs_diff(lhs2, sum2);
    for (double v : c) r.coefficient_sup = std::max(r.coefficient_sup, std::abs(v));
    r.coefficient_bound = m == 0 ? 1.0
                          : k == 0 ? std::numeric_limits<double>::infinity()
                                   : std::pow(m / (alpha * (1.0 - alpha) * static_cast<double>(k)), 0.5 * m);
    return r;
}

double majorant_log(int m, double alpha, double g_norm, double C, double k) {
    return 0.5 * m * std::log(m / (alpha * (1.0 - alpha))) + C * std::log(std::abs(g_norm) + k) +
           (1.0 - 0.5 * m) * std::log(k);
}

MajorantScan majorant_decay_scan(int m, double alpha, double g_norm, double C, double k_lo, double k_hi,
                                 std::size_t points) {
    if (m < 1 || !(alpha > 0.0 && alpha < 1.0) || !(k_lo > 0.0 && k_hi > k_lo) || points < 2)
        throw ParameterError("invalid majorant scan parameters");
    MajorantScan s;
    const double step = std::log(k_hi / k_lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double k = k_lo * std::exp(step * static_cast<double>(i));
        s.ks.push_back(k);
        s.log_values.push_back(majorant_log(m, alpha, g_norm, C, k));
        if (i > 0 && !(s.log_values[i] < s.log_values[i - 1])) s.decreasing = false;
    }
    return s;
}

LineFunction LineFunction::tabulate(std::int64_t half_width, const std::function<double(std::int64_t)>& f) {
    if (half_width < 0) throw ParameterError("half width must be >= 0");
    LineFunction psi;
    psi.lo = -half_width;
    for (std::int64_t x = -half_width; x <= half_width; ++x) psi.values.push_back(f(x));
    return psi;
}

bool LineFunction::covers(std::int64_t a, std::int64_t b) const noexcept {
    return a >= lo && b < lo + static_cast<std::int64_t>(values.size());
}

double LineFunction::operator()(std::int64_t x) const {
    if (!covers(x, x)) throw ParameterError("line function evaluated outside its table at " + std::to_string(x));
    return values[static_cast<std::size_t>(x - lo)];
}

walk::Estimate laplacian_drift_estimate(const LineFunction& psi, std::int64_t t, std::size_t trials,
                                        std::uint64_t seed) {
    if (t < 1) throw ParameterError("t must be >= 1");
    if (trials < 2) throw ParameterError("need at least 2 trials");
    if (!psi.covers(-t, t)) throw ParameterError("line function must cover [-t, t]");
    const double psi0 = psi(0);
    auto values = run_trials<double>(trials, [&](std::size_t trial) {
        Rng rng(trial_seed(seed, trial));
        // X_t = 2 (number of +1 steps) - t, drawing 64 steps per word.
        std::int64_t ups = 0, left = t;
        while (left >= 64) {
            ups += std::popcount(rng.next());
            left -= 64;
        }
        if (left > 0) ups += std::popcount(rng.next() >> (64 - left));
        return (psi(2 * ups - t) - psi0) / static_cast<double>(t);
    });
    stats::RunningMean acc;
    for (double v : values) acc.add(v);
    return {acc.mean(), acc.std_error(), trials};
}

}  // namespace lamplight::ops
