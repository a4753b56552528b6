#include "lamplight/simd/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lamplight::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool available(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2: return cpu_has_avx2();
        case Isa::Neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{detected_isa()};
    return isa;
}

void check_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": size mismatch");
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

Isa detected_isa() noexcept {
    if (available(Isa::Avx2)) return Isa::Avx2;
    if (available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

Isa active_isa() noexcept { return active().load(); }

void set_active_isa(Isa isa) {
    if (!available(isa)) throw std::invalid_argument(std::string("instruction set not available: ") + isa_name(isa));
    active() = isa;
}

// Each entry point forwards to the variant selected by active_isa().
#if defined(__x86_64__) || defined(_M_X64)
#define LAMPLIGHT_DISPATCH(fn, ...)                                  \
    switch (active_isa()) {                                          \
        case Isa::Avx2: return avx2::fn(__VA_ARGS__);                \
        default: return scalar::fn(__VA_ARGS__);                     \
    }
#elif defined(__aarch64__)
#define LAMPLIGHT_DISPATCH(fn, ...)                                  \
    switch (active_isa()) {                                          \
        case Isa::Neon: return neon::fn(__VA_ARGS__);                \
        default: return scalar::fn(__VA_ARGS__);                     \
    }
#else
#define LAMPLIGHT_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__);
#endif

double max_laplacian_defect(std::span<const double> grid, std::size_t side, std::size_t skip) {
    check_same_size(grid.size(), side * side, "max_laplacian_defect");
    if (side < 3) return 0.0;
    const double* g = grid.data();
    const std::size_t skip_row = skip / side;
    const std::size_t skip_col = skip % side;
    const bool skipping = skip < side * side && skip_row >= 1 && skip_row + 1 < side;
    auto rows = [&](std::size_t begin, std::size_t end) -> double {
        if (begin >= end) return 0.0;
        LAMPLIGHT_DISPATCH(max_laplacian_defect, g, side, begin, end)
    };
    if (!skipping) return rows(1, side - 1);

    double worst = std::max(rows(1, skip_row), rows(skip_row + 1, side - 1));
    const double* up = g + (skip_row - 1) * side;
    const double* mid = g + skip_row * side;
    const double* down = g + (skip_row + 1) * side;
    for (std::size_t j = 1; j + 1 < side; ++j) {
        if (j == skip_col) continue;
        const double avg = 0.25 * (((up[j] + down[j]) + mid[j - 1]) + mid[j + 1]);
        worst = std::max(worst, std::abs(avg - mid[j]));
    }
    return worst;
}

void matmul(std::span<const double> a, std::span<const double> b, std::span<double> c, std::size_t n) {
    check_same_size(a.size(), n * n, "matmul");
    check_same_size(b.size(), n * n, "matmul");
    check_same_size(c.size(), n * n, "matmul");
    LAMPLIGHT_DISPATCH(matmul, a.data(), b.data(), c.data(), n)
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    check_same_size(x.size(), y.size(), "axpy");
    LAMPLIGHT_DISPATCH(axpy, alpha, x.data(), y.data(), x.size())
}

void forward_difference(std::span<const double> in, std::span<double> out) {
    if (in.empty()) throw std::invalid_argument("forward_difference: empty input");
    check_same_size(out.size(), in.size() - 1, "forward_difference");
    LAMPLIGHT_DISPATCH(forward_difference, in.data(), out.data(), out.size())
}

double dbtv_sum(std::span<const double> p, std::span<const double> q) {
    check_same_size(p.size(), q.size(), "dbtv_sum");
    LAMPLIGHT_DISPATCH(dbtv_sum, p.data(), q.data(), p.size())
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    check_same_size(x.size(), y.size(), "max_abs_diff");
    LAMPLIGHT_DISPATCH(max_abs_diff, x.data(), y.data(), x.size())
}

#undef LAMPLIGHT_DISPATCH

}  // namespace lamplight::simd
