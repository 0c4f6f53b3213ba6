#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fdakit::kernels {

/// Clamp applied to F statistics so degenerate (zero-variance) points stay
/// representable in reports without IEEE infinities.
inline constexpr double kFStatClamp = 1e300;

/// Data-parallel inner loops shared by smoothing, quadrature, the
/// permutation engine and scoring. Each operation has a scalar reference
/// implementation plus SIMD variants; one table is selected at startup from
/// CPU capabilities. FDAKIT_SIMD=scalar|avx2|neon|auto overrides the choice.
struct Ops {
    const char* name;
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum of a[i]*b[i]*w[i]; the weighted inner products behind scoring and
    // trapezoid quadrature
    double (*dot3)(const double* a, const double* b, const double* w, std::size_t n);
    void (*add)(double* acc, const double* x, std::size_t n);           // acc += x
    void (*axpy)(double* y, double a, const double* x, std::size_t n);  // y += a*x
    void (*scale)(double* x, double a, std::size_t n);                  // x *= a
    // acc[i] += (x[i] - mean[i])^2; two-pass variance accumulation so that
    // identical inputs produce an exact zero
    void (*sqdev_acc)(double* acc, const double* x, const double* mean, std::size_t n);
    // f[i] = scale*(m0[i]-m1[i])^2 / sse[i], clamped to kFStatClamp.
    // sse[i] <= sse_tol is the degenerate branch: the statistic is the clamp
    // value when |m0-m1| > num_tol and 0 otherwise.
    void (*fstat)(double* f, const double* m0, const double* m1, const double* sse,
                  double scale, double sse_tol, double num_tol, std::size_t n);
};

const Ops& scalar_ops();

/// Variants compiled in and runnable on this machine (scalar first).
std::vector<const Ops*> available_ops();

/// The table picked at startup (cpuid + FDAKIT_SIMD override).
const Ops& active();

/// Name of the active variant, for diagnostics.
std::string active_name();

}  // namespace fdakit::kernels
