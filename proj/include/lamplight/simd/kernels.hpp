#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference in
// `simd::scalar`; vector variants (AVX2 on x86-64, NEON on AArch64) are chosen
// once at runtime and must agree with the reference (bit-for-bit for the
// element-wise kernels, to rounding for reductions).

#include <cstddef>
#include <span>

namespace lamplight::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa) noexcept;

/// Best instruction set supported by this binary on this CPU.
Isa detected_isa() noexcept;

/// Instruction set used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Overrides dispatch (tests use this to compare variants). Throws
/// std::invalid_argument if `isa` is not available.
void set_active_isa(Isa isa);

/// Largest |(N + S + E + W)/4 - C| over the interior of a row-major
/// `side` x `side` grid, skipping the flat index `skip` (pass a value >=
/// side*side to skip nothing).
double max_laplacian_defect(std::span<const double> grid, std::size_t side, std::size_t skip);

/// c = a * b for n x n row-major matrices. `c` must not alias `a` or `b`.
void matmul(std::span<const double> a, std::span<const double> b, std::span<double> c, std::size_t n);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// out[i] = in[i] - in[i + 1]; out.size() must be in.size() - 1.
void forward_difference(std::span<const double> in, std::span<double> out);

/// sum over i with p[i] + q[i] > 0 of (p[i] - q[i])^2 / (p[i] + q[i])
double dbtv_sum(std::span<const double> p, std::span<const double> q);

/// max |x[i] - y[i]|
double max_abs_diff(std::span<const double> x, std::span<const double> y);

#define LAMPLIGHT_SIMD_KERNEL_DECLS                                                                        \
    double max_laplacian_defect(const double* grid, std::size_t side, std::size_t row_begin,               \
                                std::size_t row_end);                                                      \
    void matmul(const double* a, const double* b, double* c, std::size_t n);                              \
    void axpy(double alpha, const double* x, double* y, std::size_t n);                                   \
    void forward_difference(const double* in, double* out, std::size_t n_out);                            \
    double dbtv_sum(const double* p, const double* q, std::size_t n);                                     \
    double max_abs_diff(const double* x, const double* y, std::size_t n);

// Raw per-ISA kernels. `max_laplacian_defect` here covers interior rows
// [row_begin, row_end) and every interior column.
namespace scalar {
LAMPLIGHT_SIMD_KERNEL_DECLS
}
namespace avx2 {
LAMPLIGHT_SIMD_KERNEL_DECLS
}
namespace neon {
LAMPLIGHT_SIMD_KERNEL_DECLS
}

#undef LAMPLIGHT_SIMD_KERNEL_DECLS

}  // namespace lamplight::simd
