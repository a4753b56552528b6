#include "lamplight/util/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lamplight::stats {

void RunningMean::add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

void RunningMean::merge(const RunningMean& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double total = static_cast<double>(n_ + other.n_);
    const double delta = other.mean_ - mean_;
    mean_ += delta * static_cast<double>(other.n_) / total;
    m2_ += other.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(other.n_) / total;
    n_ += other.n_;
}

double RunningMean::variance() const noexcept {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningMean::std_error() const noexcept {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

double proportion_std_error(double p, std::size_t n) noexcept {
    return n == 0 ? 0.0 : std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

double chi_square_sf(double statistic, std::size_t dof) {
    if (dof == 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    const boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquare chi_square_gof(std::span<const double> observed, std::span<const double> probabilities,
                         double min_expected) {
    if (observed.size() != probabilities.size()) throw std::invalid_argument("chi_square_gof: size mismatch");
    const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    std::vector<double> obs, exp;
    double acc_o = 0.0, acc_e = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        acc_o += observed[i];
        acc_e += probabilities[i] * total;
        if (acc_e >= min_expected) {
            obs.push_back(acc_o);
            exp.push_back(acc_e);
            acc_o = acc_e = 0.0;
        }
    }
    if (acc_e > 0.0 || acc_o > 0.0) {
        if (exp.empty()) {
            obs.push_back(acc_o);
            exp.push_back(acc_e);
        } else {
            obs.back() += acc_o;
            exp.back() += acc_e;
        }
    }
    ChiSquare result;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (exp[i] > 0.0) result.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    }
    result.dof = obs.size() > 0 ? obs.size() - 1 : 0;
    result.p_value = chi_square_sf(result.statistic, result.dof);
    return result;
}

ChiSquare chi_square_independence(std::span<const double> table, std::size_t rows, std::size_t cols,
                                  double min_expected) {
    if (table.size() != rows * cols) throw std::invalid_argument("chi_square_independence: shape mismatch");
    std::vector<std::vector<double>> kept;
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> row(table.begin() + static_cast<std::ptrdiff_t>(r * cols),
                                table.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
        if (std::accumulate(row.begin(), row.end(), 0.0) > 0.0) kept.push_back(std::move(row));
    }
    ChiSquare result;
    if (kept.size() < 2) return result;

    const double total = [&] {
        double t = 0.0;
        for (const auto& row : kept) t += std::accumulate(row.begin(), row.end(), 0.0);
        return t;
    }();
    std::vector<double> row_sums;
    for (const auto& row : kept) row_sums.push_back(std::accumulate(row.begin(), row.end(), 0.0));
    const double min_row = *std::min_element(row_sums.begin(), row_sums.end());

    // Merge columns until the smallest expected cell (smallest row) is large enough.
    std::vector<std::vector<double>> merged(kept.size());
    std::vector<double> pending(kept.size(), 0.0);
    double pending_col = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < kept.size(); ++r) {
            pending[r] += kept[r][c];
            pending_col += kept[r][c];
        }
        if (pending_col * min_row / total >= min_expected) {
            for (std::size_t r = 0; r < kept.size(); ++r) merged[r].push_back(pending[r]);
            std::fill(pending.begin(), pending.end(), 0.0);
            pending_col = 0.0;
        }
    }
    if (pending_col > 0.0) {
        for (std::size_t r = 0; r < kept.size(); ++r) {
            if (merged[r].empty()) merged[r].push_back(pending[r]);
            else merged[r].back() += pending[r];
        }
    }
    const std::size_t mcols = merged.front().size();
    if (mcols < 2) return result;
    std::vector<double> col_sums(mcols, 0.0);
    for (const auto& row : merged)
        for (std::size_t c = 0; c < mcols; ++c) col_sums[c] += row[c];
    for (std::size_t r = 0; r < merged.size(); ++r) {
        for (std::size_t c = 0; c < mcols; ++c) {
            const double expected = row_sums[r] * col_sums[c] / total;
            if (expected > 0.0) result.statistic += (merged[r][c] - expected) * (merged[r][c] - expected) / expected;
        }
    }
    result.dof = (merged.size() - 1) * (mcols - 1);
    result.p_value = chi_square_sf(result.statistic, result.dof);
    return result;
}

}  // namespace lamplight::stats
