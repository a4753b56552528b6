#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace lamplight::kernel {

/// Largest |x|, |y| the recurrence will build.
inline constexpr std::int64_t kRadiusCap = 200;

/// Constant term of a(z) = (2/pi) ln|z| + kappa + O(|z|^-2).
double kappa() noexcept;

enum class Normalization { Standard, Paper };

/// Potential kernel of the simple random walk on Z^2 on the square
/// [-radius, radius]^2. `values` is row-major in y (standard normalization,
/// a(0) = 0); `at` adds `offset`, which is 1/2 for the paper normalization.
struct KernelTable {
    std::int64_t radius = 0;
    std::vector<double> values;
    double offset = 0.0;
    double accuracy = 0.0;

    std::size_t side() const noexcept { return static_cast<std::size_t>(2 * radius + 1); }
    std::size_t index(std::int64_t x, std::int64_t y) const noexcept {
        return static_cast<std::size_t>((y + radius) * (2 * radius + 1) + (x + radius));
    }
    bool contains(std::int64_t x, std::int64_t y) const noexcept;
    double at(std::int64_t x, std::int64_t y) const;
    double standard_at(std::int64_t x, std::int64_t y) const;
};

/// a(x, y) in the standard normalization. The first call for a given extent
/// builds (and caches) the exact recurrence up to that extent.
/// Throws ParameterError for tol < 1e-12 and ToleranceUnachievable past the cap.
double potential_kernel(std::int64_t x, std::int64_t y, double tol = 1e-12);

/// Throws ParameterError for radius < 1 or tol < 1e-13 and CapExceeded past kRadiusCap.
KernelTable build_kernel_table(std::int64_t radius, double tol = 1e-12,
                               Normalization normalization = Normalization::Standard);

struct KernelInvariants {
    double max_off_origin_residual = 0.0;
    double origin_defect = 0.0;  ///< 1/4 sum over neighbors of 0 minus a(0)
    double max_symmetry_gap = 0.0;
};

/// Exhaustive scan of harmonicity and symmetry over the table interior.
KernelInvariants scan_invariants(const KernelTable& table);

/// max over inner_cutoff <= |z| <= radius (Euclidean) of |a(z) - ((2/pi) ln|z| + kappa)|.
/// Throws ParameterError unless radius >= 25 and inner_cutoff < radius.
double asymptotic_deviation(const KernelTable& table, double inner_cutoff = 20.0, double kappa_value = kappa());

void write_csv(std::ostream& out, const KernelTable& table);
nlohmann::json to_json(const KernelTable& table);

}  // namespace lamplight::kernel
