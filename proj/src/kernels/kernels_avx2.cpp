#include "fdakit/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace fdakit::kernels {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
    return _mm_cvtsd_f64(s1);
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_avx2(const double* a, const double* b, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(w + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i] * w[i];
    return s;
}

void add_avx2(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) acc[i] += x[i];
}

void axpy_avx2(double* y, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double* x, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void sqdev_acc_avx2(double* acc, const double* x, const double* mean, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(mean + i));
        _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(d, d, _mm256_loadu_pd(acc + i)));
    }
    for (; i < n; ++i) {
        const double d = x[i] - mean[i];
        acc[i] += d * d;
    }
}

void fstat_avx2(double* f, const double* m0, const double* m1, const double* sse,
                double scale, double sse_tol, double num_tol, std::size_t n) {
    const __m256d vscale = _mm256_set1_pd(scale);
    const __m256d vsse_tol = _mm256_set1_pd(sse_tol);
    const __m256d vnum_tol = _mm256_set1_pd(num_tol);
    const __m256d vclamp = _mm256_set1_pd(kFStatClamp);
    const __m256d vzero = _mm256_setzero_pd();
    const __m256d vabs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(m0 + i), _mm256_loadu_pd(m1 + i));
        const __m256d s = _mm256_loadu_pd(sse + i);
        const __m256d regular = _mm256_cmp_pd(s, vsse_tol, _CMP_GT_OQ);
        // regular branch; guard the division so the degenerate lanes cannot fault
        const __m256d safe_s = _mm256_blendv_pd(_mm256_set1_pd(1.0), s, regular);
        __m256d v = _mm256_div_pd(_mm256_mul_pd(vscale, _mm256_mul_pd(d, d)), safe_s);
        v = _mm256_min_pd(v, vclamp);
        // degenerate branch
        const __m256d big = _mm256_cmp_pd(_mm256_and_pd(d, vabs_mask), vnum_tol, _CMP_GT_OQ);
        const __m256d degen = _mm256_blendv_pd(vzero, vclamp, big);
        _mm256_storeu_pd(f + i, _mm256_blendv_pd(degen, v, regular));
    }
    for (; i < n; ++i) {
        const double d = m0[i] - m1[i];
        if (sse[i] > sse_tol) {
            const double v = scale * d * d / sse[i];
            f[i] = v < kFStatClamp ? v : kFStatClamp;
        } else {
            f[i] = std::fabs(d) > num_tol ? kFStatClamp : 0.0;
        }
    }
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops = {
        "avx2",
        sum_avx2, dot_avx2, dot3_avx2,
        add_avx2, axpy_avx2, scale_avx2,
        sqdev_acc_avx2, fstat_avx2,
    };
    return ops;
}

}  // namespace fdakit::kernels

#endif  // __AVX2__ && __FMA__
