#include "lamplight/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace lamplight::simd::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hmax(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

inline double hsum(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

double max_laplacian_defect(const double* grid, std::size_t side, std::size_t row_begin, std::size_t row_end) {
    const __m256d quarter = _mm256_set1_pd(0.25);
    __m256d worst_v = _mm256_setzero_pd();
    double worst = 0.0;
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const double* up = grid + (i - 1) * side;
        const double* mid = grid + i * side;
        const double* down = grid + (i + 1) * side;
        std::size_t j = 1;
        for (; j + 4 <= side - 1; j += 4) {
            const __m256d sum = _mm256_add_pd(
                _mm256_add_pd(_mm256_add_pd(_mm256_loadu_pd(up + j), _mm256_loadu_pd(down + j)),
                              _mm256_loadu_pd(mid + j - 1)),
                _mm256_loadu_pd(mid + j + 1));
            const __m256d defect = _mm256_sub_pd(_mm256_mul_pd(quarter, sum), _mm256_loadu_pd(mid + j));
            worst_v = _mm256_max_pd(worst_v, abs_pd(defect));
        }
        for (; j + 1 < side; ++j) {
            const double avg = 0.25 * (((up[j] + down[j]) + mid[j - 1]) + mid[j + 1]);
            worst = std::max(worst, std::fabs(avg - mid[j]));
        }
    }
    return std::max(worst, hmax(worst_v));
}

void matmul(const double* a, const double* b, double* c, std::size_t n) {
    std::fill(c, c + n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double s = a[i * n + k];
            const __m256d sv = _mm256_set1_pd(s);
            const double* brow = b + k * n;
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                const __m256d acc = _mm256_loadu_pd(row + j);
                _mm256_storeu_pd(row + j, _mm256_add_pd(acc, _mm256_mul_pd(sv, _mm256_loadu_pd(brow + j))));
            }
            for (; j < n; ++j) row[j] = row[j] + s * brow[j];
        }
    }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d acc = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(acc, _mm256_mul_pd(av, _mm256_loadu_pd(x + i))));
    }
    for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void forward_difference(const double* in, double* out, std::size_t n_out) {
    std::size_t i = 0;
    for (; i + 4 <= n_out; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(in + i), _mm256_loadu_pd(in + i + 1)));
    for (; i < n_out; ++i) out[i] = in[i] - in[i + 1];
}

double dbtv_sum(const double* p, const double* q, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d pv = _mm256_loadu_pd(p + i);
        const __m256d qv = _mm256_loadu_pd(q + i);
        const __m256d s = _mm256_add_pd(pv, qv);
        const __m256d live = _mm256_cmp_pd(s, zero, _CMP_GT_OQ);
        const __m256d d = _mm256_sub_pd(pv, qv);
        const __m256d term = _mm256_div_pd(_mm256_mul_pd(d, d), _mm256_blendv_pd(one, s, live));
        acc = _mm256_add_pd(acc, _mm256_and_pd(term, live));
    }
    double total = hsum(acc);
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
    __m256d worst_v = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        worst_v = _mm256_max_pd(worst_v, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i))));
    double worst = hmax(worst_v);
    for (; i < n; ++i) worst = std::max(worst, std::fabs(x[i] - y[i]));
    return worst;
}

}  // namespace lamplight::simd::avx2

#endif
