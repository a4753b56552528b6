#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lamplight::entropy {

/// Probability mass on finitely many outcome keys, sorted by key. `space`
/// names the outcome space; functionals of two distributions require equal
/// spaces. Masses must be positive and sum to 1 within 1e-12.
class FiniteDistribution {
public:
    FiniteDistribution() = default;
    /// Throws ParameterError on duplicate keys, non-positive mass or bad total.
    FiniteDistribution(std::vector<std::pair<std::string, double>> outcomes, std::string space = "");
    /// Outcomes i -> mass[i] keyed by decimal index; zero masses are dropped.
    static FiniteDistribution from_masses(std::span<const double> mass, std::string space = "");

    const std::vector<std::pair<std::string, double>>& outcomes() const noexcept { return outcomes_; }
    const std::string& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return outcomes_.size(); }
    /// Mass of `key` (0 off the support).
    double mass(const std::string& key) const;

private:
    std::vector<std::pair<std::string, double>> outcomes_;
    std::string space_;
};

/// Joint law of (X, Y) on pair keys, with marginals cached at construction.
class JointDistribution {
public:
    JointDistribution(std::vector<std::pair<std::pair<std::string, std::string>, double>> outcomes);
    /// Row-major rows x cols mass table, keys are decimal indices; zeros dropped.
    static JointDistribution from_table(std::span<const double> table, std::size_t rows, std::size_t cols);

    const std::vector<std::pair<std::pair<std::string, std::string>, double>>& outcomes() const noexcept {
        return outcomes_;
    }
    const FiniteDistribution& x() const noexcept { return x_; }
    const FiniteDistribution& y() const noexcept { return y_; }

private:
    std::vector<std::pair<std::pair<std::string, std::string>, double>> outcomes_;
    FiniteDistribution x_, y_;
};

/// -sum mu ln mu in nats.
double entropy(const FiniteDistribution& mu);
/// D(mu || nu) in nats; +infinity unless mu << nu. SpecMismatch on different spaces.
double kl_divergence(const FiniteDistribution& mu, const FiniteDistribution& nu);
/// sum over the union support of (mu - nu)^2 / (mu + nu).
double dbtv(const FiniteDistribution& mu, const FiniteDistribution& nu);

double joint_entropy(const JointDistribution& p);
/// H(X) + H(Y) - H(X, Y).
double mutual_information(const JointDistribution& p);
/// sum p(x, y) ln(p(x, y) / (p(x) p(y))), the direct form of I.
double mutual_information_direct(const JointDistribution& p);
/// H(X | Y) = H(X, Y) - H(Y).
double conditional_entropy(const JointDistribution& p);

}  // namespace lamplight::entropy
