#pragma once

#include "lamplight/entropy/distribution.hpp"
#include "lamplight/group/element.hpp"
#include "lamplight/walk/measure.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lamplight::entropy {

/// Exact law of X_n from the identity.
struct WalkDistribution {
    std::map<group::Element, double> mass;
    /// Keyed by canonical element serialization, space = group expression.
    FiniteDistribution finite(const group::GroupSpec& spec) const;
};

/// Repeated convolution with the step measure. Throws CapExceeded once the
/// support exceeds `support_cap`.
WalkDistribution exact_walk_distribution(const walk::StepMeasure& measure, std::size_t n,
                                         std::size_t support_cap = 2'000'000);

/// H[0..n_max] and increments delta[k] = H[k] - H[k-1] (delta[0] = 0).
struct EntropySequence {
    std::vector<double> H;
    std::vector<double> delta;
    bool increments_nonincreasing = true;  ///< within 1e-12
    bool scaled_increment_bound = true;    ///< n delta[n] <= H[n] within 1e-12
};
EntropySequence entropy_sequence(const walk::StepMeasure& measure, std::size_t n_max,
                                 std::size_t support_cap = 2'000'000);

/// sqrt(n / H(X_n)) for n = 1..H.size()-1. Throws ParameterError on H(X_n) <= 0.
std::vector<double> harmonic_growth_lower_curve(std::span<const double> H);

/// Entropy of Binomial(m, 1/2) in nats, summed in extended precision.
double binomial_half_entropy(std::int64_t m);

struct AuditResult {
    std::string inequality;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;  ///< max lhs / rhs over instances with rhs > 0
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};
nlohmann::json to_json(const AuditResult& a);

struct AuditConfig {
    std::size_t fuzz_trials = 10'000;
    std::size_t max_outcomes = 6;
    std::uint64_t seed = 1;
    /// Walk instance for the harmonic-function proposition.
    std::string walk_group = "C2 wr Z";
    std::function<double(const group::Element&)> harmonic;  ///< default: base coordinate
    std::size_t walk_n_max = 10;
    /// Integer-line remark: lazy walk, h(x) = x, n = 1..line_n_max.
    std::size_t line_n_max = 2000;
};

/// Audits, in order: the two-variable lemma, dbtv <= 2 KL, the conditional
/// corollary, the harmonic-function proposition on exact walk laws, and the
/// line-walk remark. An instance violates when lhs > rhs (1 + 1e-12) + 1e-15.
std::vector<AuditResult> check_inequality_suite(const AuditConfig& config);

}  // namespace lamplight::entropy
