#include "fdakit/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace fdakit::kernels {
namespace {

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_neon(const double* a, const double* b, const double* w, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t ab = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vfmaq_f64(acc, ab, vld1q_f64(w + i));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i] * w[i];
    return s;
}

void add_neon(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(x + i)));
    for (; i < n; ++i) acc[i] += x[i];
}

void axpy_neon(double* y, double a, const double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_neon(double* x, double a, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void sqdev_acc_neon(double* acc, const double* x, const double* mean, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vld1q_f64(mean + i));
        vst1q_f64(acc + i, vfmaq_f64(vld1q_f64(acc + i), d, d));
    }
    for (; i < n; ++i) {
        const double d = x[i] - mean[i];
        acc[i] += d * d;
    }
}

void fstat_neon(double* f, const double* m0, const double* m1, const double* sse,
                double scale, double sse_tol, double num_tol, std::size_t n) {
    // branch-heavy; the scalar form is already cheap at series length
    for (std::size_t i = 0; i < n; ++i) {
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

const Ops& neon_ops() {
    static const Ops ops = {
        "neon",
        sum_neon, dot_neon, dot3_neon,
        add_neon, axpy_neon, scale_neon,
        sqdev_acc_neon, fstat_neon,
    };
    return ops;
}

}  // namespace fdakit::kernels

#endif  // __aarch64__
