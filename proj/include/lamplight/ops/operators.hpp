#pragma once

#include "lamplight/walk/experiments.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lamplight::ops {

/// b(k) = C(n, k) p^k (1 - p)^(n - k) on [0, n]; zero elsewhere.
struct BinomialTable {
    std::int64_t n = 0;
    double p = 0.5;
    std::vector<double> masses;

    /// Throws ParameterError unless n >= 0 and 0 <= p <= 1.
    BinomialTable(std::int64_t n, double p);
    double operator()(std::int64_t k) const noexcept;
};

/// Values of d^m b(k) for k = first, first + 1, ..., with first = -m and the
/// last index n. The difference is d psi(k) = psi(k) - psi(k + 1).
struct DifferenceSequence {
    std::int64_t first = 0;
    std::vector<double> values;

    double at(std::int64_t k) const noexcept;
    double max_abs() const noexcept;
};
DifferenceSequence finite_difference(const BinomialTable& table, int m);

/// (m / (p (1 - p) n))^(m / 2); +infinity for n = 0 and m > 0.
double derivative_bound(std::int64_t n, double p, int m);

struct DerivativeAudit {
    std::size_t cases = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;  ///< max over cases of max_k |d^m b| / bound
    std::int64_t worst_n = 0;
    int worst_m = 0;
    double worst_p = 0.0;
};
/// Every (n, m, p) in the product of the ranges; a case violates when
/// max |d^m b| > bound (1 + 1e-12).
DerivativeAudit verify_derivative_bound(std::span<const std::int64_t> ns, std::span<const int> ms,
                                        std::span<const double> ps);

/// Dense row-stochastic matrix, row-major.
class FiniteMarkovOperator {
public:
    static constexpr std::size_t kMaxSize = 256;

    /// Throws ParameterError on shape, negative entries, row sums off by more
    /// than 1e-12, or size above kMaxSize.
    FiniteMarkovOperator(std::size_t size, std::vector<double> matrix);
    /// Simple random walk on the cycle of the given order.
    static FiniteMarkovOperator cycle(std::size_t order);

    std::size_t size() const noexcept { return size_; }
    const std::vector<double>& matrix() const noexcept { return matrix_; }

private:
    std::size_t size_;
    std::vector<double> matrix_;
};

struct ExpansionReport {
    std::size_t size = 0;
    std::int64_t k = 0;
    int m = 0;
    double alpha = 0.0;
    double expansion_discrepancy = 0.0;   ///< max |Q^k - sum_j b(j) P^j|
    double difference_discrepancy = 0.0;  ///< max |(I - P)^m Q^k - sum_j c_j P^j|
    double coefficient_sup = 0.0;         ///< max_j |c_j|
    double coefficient_bound = 0.0;       ///< (m / (alpha (1 - alpha) k))^(m / 2)
    double max_discrepancy() const noexcept;
};
nlohmann::json to_json(const ExpansionReport& r);

/// Q = alpha I + (1 - alpha) P. Checks Q^k = sum_j b(j) P^j with b the
/// Binomial(k, 1 - alpha) law, and (I - P)^m Q^k = sum_j c_j P^j where c_j is
/// the m-fold alternating difference of b, c_j = sum_i C(m, i) (-1)^i b(j - i).
/// Throws ParameterError unless 0 < alpha < 1, k >= 0, m >= 0.
ExpansionReport lazy_power_expansion_check(const FiniteMarkovOperator& P, double alpha, std::int64_t k, int m);

/// log of (m / (alpha (1 - alpha)))^(m / 2) (|g| + k)^C k^(1 - m / 2).
double majorant_log(int m, double alpha, double g_norm, double C, double k);

struct MajorantScan {
    std::vector<double> ks;
    std::vector<double> log_values;
    bool decreasing = true;
};
/// Evaluates the majorant on a geometric grid of `points` values in [k_lo, k_hi].
MajorantScan majorant_decay_scan(int m, double alpha, double g_norm, double C, double k_lo, double k_hi,
                                 std::size_t points = 200);

/// psi tabulated on [lo, lo + values.size()).
struct LineFunction {
    std::int64_t lo = 0;
    std::vector<double> values;

    static LineFunction tabulate(std::int64_t half_width, const std::function<double(std::int64_t)>& f);
    bool covers(std::int64_t a, std::int64_t b) const noexcept;
    /// Throws ParameterError outside the table.
    double operator()(std::int64_t x) const;
};

/// (E psi(X_t) - psi(0)) / t for the simple walk on Z from 0. Throws
/// ParameterError unless psi covers [-t, t].
walk::Estimate laplacian_drift_estimate(const LineFunction& psi, std::int64_t t, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace lamplight::ops
