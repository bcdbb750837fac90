// AVX2 variants of the kernel table. This translation unit is compiled with
// -mavx2 on x86-64; callers must check avx2() != nullptr (runtime cpuid check
// happens in the dispatcher) before using the table.

#include "msl/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace msl::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

inline double hsum_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_abs_dev_avx2(const double* xs, std::size_t n, double c) {
    const __m256d cc = _mm256_set1_pd(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(xs + i);
        acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(v, cc)));
    }
    double total = hsum_pd(acc);
    for (; i < n; ++i) total += std::abs(xs[i] - c);
    return total;
}

void accum_abs_dev_avx2(double* out, const double* xs, std::size_t n, double c) {
    const __m256d cc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(xs + i);
        __m256d o = _mm256_loadu_pd(out + i);
        o = _mm256_add_pd(o, abs_pd(_mm256_sub_pd(v, cc)));
        _mm256_storeu_pd(out + i, o);
    }
    for (; i < n; ++i) out[i] += std::abs(xs[i] - c);
}

double sum_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(va, vb)));
    }
    double total = hsum_pd(acc);
    for (; i < n; ++i) total += std::abs(a[i] - b[i]);
    return total;
}

void axpy_avx2(double* y, const double* x, double s, std::size_t n) {
    const __m256d ss = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        vy = _mm256_add_pd(vy, _mm256_mul_pd(ss, vx));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += s * x[i];
}

double sum_dist_2d_avx2(const double* ax, const double* ay, const double* bx,
                        const double* by, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(ax + i), _mm256_loadu_pd(bx + i));
        __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ay + i), _mm256_loadu_pd(by + i));
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(d2));
    }
    double total = hsum_pd(acc);
    for (; i < n; ++i) {
        const double dx = ax[i] - bx[i];
        const double dy = ay[i] - by[i];
        total += std::sqrt(dx * dx + dy * dy);
    }
    return total;
}

double sum_dist_point_2d_avx2(const double* xs, const double* ys, std::size_t n,
                              double cx, double cy) {
    const __m256d vcx = _mm256_set1_pd(cx);
    const __m256d vcy = _mm256_set1_pd(cy);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vcx);
        __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vcy);
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(d2));
    }
    double total = hsum_pd(acc);
    for (; i < n; ++i) {
        const double dx = xs[i] - cx;
        const double dy = ys[i] - cy;
        total += std::sqrt(dx * dx + dy * dy);
    }
    return total;
}

constexpr Ops kAvx2Ops = {
    "avx2",
    sum_abs_dev_avx2,
    accum_abs_dev_avx2,
    sum_abs_diff_avx2,
    axpy_avx2,
    sum_dist_2d_avx2,
    sum_dist_point_2d_avx2,
};

}  // namespace

namespace detail {
const Ops* avx2_table() { return &kAvx2Ops; }
}  // namespace detail

}  // namespace msl::kernels

#else  // non-x86 or AVX2 not enabled for this TU

namespace msl::kernels::detail {
const Ops* avx2_table() { return nullptr; }
}  // namespace msl::kernels::detail

#endif
