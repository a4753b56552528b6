#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lamplight::stats {

/// Welford accumulator for a sample mean and its standard error.
class RunningMean {
public:
    void add(double x) noexcept;
    void merge(const RunningMean& other) noexcept;

    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept;  // unbiased sample variance
    double std_error() const noexcept;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Standard error of a binomial proportion estimate.
double proportion_std_error(double p, std::size_t n) noexcept;

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Upper tail probability of the chi-square distribution.
double chi_square_sf(double statistic, std::size_t dof);

/// Goodness of fit of observed counts against expected probabilities.
/// Adjacent categories are merged (in order) until every expected count is at
/// least `min_expected`.
ChiSquare chi_square_gof(std::span<const double> observed, std::span<const double> probabilities,
                         double min_expected = 5.0);

/// Pearson independence test on a rows x cols table (row-major). Columns are
/// merged left to right until every expected cell count reaches `min_expected`;
/// empty rows are dropped.
ChiSquare chi_square_independence(std::span<const double> table, std::size_t rows, std::size_t cols,
                                  double min_expected = 5.0);

}  // namespace lamplight::stats
