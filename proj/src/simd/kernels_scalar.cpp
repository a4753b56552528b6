#include "lamplight/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace lamplight::simd::scalar {

double max_laplacian_defect(const double* grid, std::size_t side, std::size_t row_begin, std::size_t row_end) {
    double worst = 0.0;
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const double* up = grid + (i - 1) * side;
        const double* mid = grid + i * side;
        const double* down = grid + (i + 1) * side;
        for (std::size_t j = 1; j + 1 < side; ++j) {
            const double avg = 0.25 * (((up[j] + down[j]) + mid[j - 1]) + mid[j + 1]);
            worst = std::max(worst, std::fabs(avg - mid[j]));
        }
    }
    return worst;
}

void matmul(const double* a, const double* b, double* c, std::size_t n) {
    std::fill(c, c + n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double s = a[i * n + k];
            const double* brow = b + k * n;
            for (std::size_t j = 0; j < n; ++j) row[j] = row[j] + s * brow[j];
        }
    }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void forward_difference(const double* in, double* out, std::size_t n_out) {
    for (std::size_t i = 0; i < n_out; ++i) out[i] = in[i] - in[i + 1];
}

double dbtv_sum(const double* p, const double* q, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = p[i] + q[i];
        if (s > 0.0) {
            const double d = p[i] - q[i];
            total += d * d / s;
        }
    }
    return total;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(x[i] - y[i]));
    return worst;
}

}  // namespace lamplight::simd::scalar
