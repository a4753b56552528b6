#include "lamplight/simd/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace lamplight::simd::neon {

double max_laplacian_defect(const double* grid, std::size_t side, std::size_t row_begin, std::size_t row_end) {
    const float64x2_t quarter = vdupq_n_f64(0.25);
    float64x2_t worst_v = vdupq_n_f64(0.0);
    double worst = 0.0;
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const double* up = grid + (i - 1) * side;
        const double* mid = grid + i * side;
        const double* down = grid + (i + 1) * side;
        std::size_t j = 1;
        for (; j + 2 <= side - 1; j += 2) {
            const float64x2_t sum =
                vaddq_f64(vaddq_f64(vaddq_f64(vld1q_f64(up + j), vld1q_f64(down + j)), vld1q_f64(mid + j - 1)),
                          vld1q_f64(mid + j + 1));
            const float64x2_t defect = vsubq_f64(vmulq_f64(quarter, sum), vld1q_f64(mid + j));
            worst_v = vmaxq_f64(worst_v, vabsq_f64(defect));
        }
        for (; j + 1 < side; ++j) {
            const double avg = 0.25 * (((up[j] + down[j]) + mid[j - 1]) + mid[j + 1]);
            worst = std::max(worst, std::fabs(avg - mid[j]));
        }
    }
    return std::max(worst, vmaxvq_f64(worst_v));
}

void matmul(const double* a, const double* b, double* c, std::size_t n) {
    std::fill(c, c + n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double s = a[i * n + k];
            const float64x2_t sv = vdupq_n_f64(s);
            const double* brow = b + k * n;
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2)
                vst1q_f64(row + j, vaddq_f64(vld1q_f64(row + j), vmulq_f64(sv, vld1q_f64(brow + j))));
            for (; j < n; ++j) row[j] = row[j] + s * brow[j];
        }
    }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(av, vld1q_f64(x + i))));
    for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void forward_difference(const double* in, double* out, std::size_t n_out) {
    std::size_t i = 0;
    for (; i + 2 <= n_out; i += 2) vst1q_f64(out + i, vsubq_f64(vld1q_f64(in + i), vld1q_f64(in + i + 1)));
    for (; i < n_out; ++i) out[i] = in[i] - in[i + 1];
}

double dbtv_sum(const double* p, const double* q, std::size_t n) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    const float64x2_t one = vdupq_n_f64(1.0);
    float64x2_t acc = zero;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t pv = vld1q_f64(p + i);
        const float64x2_t qv = vld1q_f64(q + i);
        const float64x2_t s = vaddq_f64(pv, qv);
        const uint64x2_t live = vcgtq_f64(s, zero);
        const float64x2_t d = vsubq_f64(pv, qv);
        const float64x2_t term = vdivq_f64(vmulq_f64(d, d), vbslq_f64(live, s, one));
        acc = vaddq_f64(acc, vbslq_f64(live, term, zero));
    }
    double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) {
        const double s = p[i] + q[i];
        if (s > 0.0) {
            const double d = p[i] - q[i];
            total += d * d / s;
        }
    }
    return total;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
    float64x2_t worst_v = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) worst_v = vmaxq_f64(worst_v, vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    double worst = vmaxvq_f64(worst_v);
    for (; i < n; ++i) worst = std::max(worst, std::fabs(x[i] - y[i]));
    return worst;
}

}  // namespace lamplight::simd::neon

#endif
