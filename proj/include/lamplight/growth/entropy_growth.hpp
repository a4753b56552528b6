#pragma once

#include "lamplight/group/element.hpp"
#include "lamplight/group/group_spec.hpp"
#include "lamplight/util/stats.hpp"
#include "lamplight/walk/experiments.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace lamplight::growth {

/// K_n(z): number of times t in [0, n] the base walk sat at z.
struct VisitProfile {
    std::int64_t n = 0;
    std::unordered_map<group::Element, std::int64_t, group::ElementHash> counts;

    std::size_t distinct() const noexcept { return counts.size(); }
    /// #{z : K_n(z) >= threshold}
    std::size_t at_least(double threshold) const noexcept;
    std::int64_t total() const noexcept;
};

/// Base projection of the move-or-switch walk: hold with probability 1/2,
/// otherwise a uniform neighbour. Throws SpecMismatch unless `base` is Z or Z^2.
VisitProfile visit_count_profile(const group::GroupSpec& base, std::int64_t n, std::uint64_t seed);

struct VisitSummary {
    walk::Estimate distinct;
    walk::Estimate thick;  ///< #{z : K_n(z) >= ln n}
};
VisitSummary visit_summary(const group::GroupSpec& base, std::int64_t n, std::size_t trials, std::uint64_t seed);

/// H(Y_k), k = 0..k_max, for the lazy walk Y = 1/2 I + 1/2 uniform on `lamp`.
/// Closed forms for C2 (ln 2 for k >= 1) and Z (Binomial(2k, 1/2)); other
/// lamps by exact convolution, throwing CapExceeded past `support_cap`.
std::vector<double> lamp_entropy_table(const group::GroupSpec& lamp, std::int64_t k_max,
                                       std::size_t support_cap = 200'000);

/// Monte Carlo mean of sum_z H(Y_{J_n(z)}), J_n(z) = #{t < n : z_t = z} lamp steps
/// at z (K_n(z) less the final visit), a lower bound on H(X_n) for the
/// move-or-switch walk on lamp wr base.
walk::Estimate conditional_entropy_lower_bound(const group::GroupSpec& lamp, const group::GroupSpec& base,
                                               std::int64_t n, std::size_t trials, std::uint64_t seed);

/// log applied k times (natural log).
double iterated_log(double n, int k);

struct GrowthRow {
    std::int64_t n = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double reference = 0.0;  ///< n / log^(k) n
    double ratio = 0.0;      ///< estimate / reference
};

inline constexpr int kMaxDepth = 3;

/// Lower-bound curve for G_1 = C2 wr Z^2, G_{k+1} = G_k wr Z^2. Depth 1 is
/// simulated directly; deeper levels use
///   lower_k(n) = E#{z : K_n(z) >= ln n} * lower_{k-1}(ceil(ln n)).
/// Throws CapExceeded for depth > kMaxDepth, ParameterError for depth < 1 or a
/// nonpositive reference.
std::vector<GrowthRow> iterated_growth_experiment(int depth, std::span<const std::int64_t> ns, std::size_t trials,
                                                  std::uint64_t seed);

struct DirectCheckRow {
    std::int64_t n = 0;
    double direct = 0.0;     ///< E sum_z lower_1(K_n(z)) on G_2
    double recursion = 0.0;  ///< depth-2 recursion value
    double std_error = 0.0;  ///< of direct
};
/// Direct G_2 evaluation for small n (n <= 2^10, else ParameterError).
std::vector<DirectCheckRow> depth2_direct_check(std::span<const std::int64_t> ns, std::size_t trials,
                                                std::uint64_t seed);

struct SandwichRow {
    std::int64_t n = 0;
    double lower = 0.0;
    double upper = 0.0;
};
/// Depth-1 sandwich: lower = ln 2 E|R_n|; upper = E|R_n| (ln 2 + ln 3e) +
/// ln(n + 1) + ln E|R_n| (lamps on the range, lattice-animal count for the
/// range, its size, the endpoint), capped by ln 2 E|R_n| + n H(base step) + ln(n + 1).
std::vector<SandwichRow> depth1_sandwich(std::span<const std::int64_t> ns, std::size_t trials, std::uint64_t seed);

/// Least-squares slope of ln(value) against ln(n).
stats::LineFit exponent_fit(std::span<const GrowthRow> rows);

/// True when estimate(n_{i+1}) >= estimate(n_i) - 2 sqrt(se_i^2 + se_{i+1}^2).
bool nondecreasing_within_error(std::span<const GrowthRow> rows);

}  // namespace lamplight::growth
