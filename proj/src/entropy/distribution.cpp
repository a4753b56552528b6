#include "lamplight/entropy/distribution.hpp"

#include "lamplight/simd/kernels.hpp"
#include "lamplight/util/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lamplight::entropy {

namespace {

void check_total(double total) {
    if (std::abs(total - 1.0) > 1e-12) throw ParameterError("distribution mass is " + std::to_string(total) + ", not 1");
}

double xlogx_sum(const std::vector<std::pair<std::string, double>>& o) {
    double h = 0.0;
    for (const auto& [k, m] : o) h -= m * std::log(m);
    return h;
}

void same_space(const FiniteDistribution& a, const FiniteDistribution& b) {
    if (a.space() != b.space()) throw SpecMismatch("outcome spaces differ: '" + a.space() + "' vs '" + b.space() + "'");
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<std::pair<std::string, double>> outcomes, std::string space)
    : outcomes_(std::move(outcomes)), space_(std::move(space)) {
    std::sort(outcomes_.begin(), outcomes_.end());
    double total = 0.0;
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (!(outcomes_[i].second > 0.0)) throw ParameterError("outcome '" + outcomes_[i].first + "' has non-positive mass");
        if (i > 0 && outcomes_[i].first == outcomes_[i - 1].first)
            throw ParameterError("duplicate outcome '" + outcomes_[i].first + "'");
        total += outcomes_[i].second;
    }
    check_total(total);
}

FiniteDistribution FiniteDistribution::from_masses(std::span<const double> mass, std::string space) {
    std::vector<std::pair<std::string, double>> o;
    for (std::size_t i = 0; i < mass.size(); ++i)
        if (mass[i] != 0.0) o.emplace_back(std::to_string(i), mass[i]);
    return FiniteDistribution(std::move(o), std::move(space));
}

double FiniteDistribution::mass(const std::string& key) const {
    auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), key,
                               [](const auto& e, const std::string& k) { return e.first < k; });
    return it != outcomes_.end() && it->first == key ? it->second : 0.0;
}

JointDistribution::JointDistribution(std::vector<std::pair<std::pair<std::string, std::string>, double>> outcomes)
    : outcomes_(std::move(outcomes)) {
    std::sort(outcomes_.begin(), outcomes_.end());
    std::map<std::string, double> mx, my;
    double total = 0.0;
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        const auto& [k, m] = outcomes_[i];
        if (!(m > 0.0)) throw ParameterError("joint outcome has non-positive mass");
        if (i > 0 && k == outcomes_[i - 1].first) throw ParameterError("duplicate joint outcome");
        mx[k.first] += m;
        my[k.second] += m;
        total += m;
    }
    check_total(total);
    x_ = FiniteDistribution({mx.begin(), mx.end()}, "X");
    y_ = FiniteDistribution({my.begin(), my.end()}, "Y");
}

JointDistribution JointDistribution::from_table(std::span<const double> table, std::size_t rows, std::size_t cols) {
    if (table.size() != rows * cols) throw ParameterError("joint table shape mismatch");
    std::vector<std::pair<std::pair<std::string, std::string>, double>> o;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (table[r * cols + c] != 0.0) o.push_back({{std::to_string(r), std::to_string(c)}, table[r * cols + c]});
    return JointDistribution(std::move(o));
}

double entropy(const FiniteDistribution& mu) { return xlogx_sum(mu.outcomes()); }

double kl_divergence(const FiniteDistribution& mu, const FiniteDistribution& nu) {
    same_space(mu, nu);
    double d = 0.0;
    for (const auto& [k, m] : mu.outcomes()) {
        const double q = nu.mass(k);
        if (q == 0.0) return std::numeric_limits<double>::infinity();
        d += m * std::log(m / q);
    }
    return std::max(d, 0.0);
}

double dbtv(const FiniteDistribution& mu, const FiniteDistribution& nu) {
    same_space(mu, nu);
    // align both on the union support, then one vector pass
    std::vector<double> p, q;
    const auto& a = mu.outcomes();
    const auto& b = nu.outcomes();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            p.push_back(a[i++].second);
            q.push_back(0.0);
        } else if (i == a.size() || b[j].first < a[i].first) {
            p.push_back(0.0);
            q.push_back(b[j++].second);
        } else {
            p.push_back(a[i++].second);
            q.push_back(b[j++].second);
        }
    }
    return simd::dbtv_sum(p, q);
}

double joint_entropy(const JointDistribution& p) {
    double h = 0.0;
    for (const auto& [k, m] : p.outcomes()) h -= m * std::log(m);
    return h;
}

double mutual_information(const JointDistribution& p) {
    return std::max(0.0, entropy(p.x()) + entropy(p.y()) - joint_entropy(p));
}

double mutual_information_direct(const JointDistribution& p) {
    double i = 0.0;
    for (const auto& [k, m] : p.outcomes()) i += m * std::log(m / (p.x().mass(k.first) * p.y().mass(k.second)));
    return i;
}

double conditional_entropy(const JointDistribution& p) { return joint_entropy(p) - entropy(p.y()); }

}  // namespace lamplight::entropy
