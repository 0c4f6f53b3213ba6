#include "fdakit/kernels.hpp"

#include <cmath>

namespace fdakit::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3_scalar(const double* a, const double* b, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * w[i];
    return s;
}

void add_scalar(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void sqdev_acc_scalar(double* acc, const double* x, const double* mean, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean[i];
        acc[i] += d * d;
    }
}

void fstat_scalar(double* f, const double* m0, const double* m1, const double* sse,
                  double scale, double sse_tol, double num_tol, std::size_t n) {
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

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        sum_scalar, dot_scalar, dot3_scalar,
        add_scalar, axpy_scalar, scale_scalar,
        sqdev_acc_scalar, fstat_scalar,
    };
    return ops;
}

}  // namespace fdakit::kernels
