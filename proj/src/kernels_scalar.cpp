#include "msl/kernels.hpp"

#include <cmath>

namespace msl::kernels {
namespace {

double sum_abs_dev_scalar(const double* xs, std::size_t n, double c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::abs(xs[i] - c);
    return acc;
}

void accum_abs_dev_scalar(double* out, const double* xs, std::size_t n, double c) {
    for (std::size_t i = 0; i < n; ++i) out[i] += std::abs(xs[i] - c);
}

double sum_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

void axpy_scalar(double* y, const double* x, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

double sum_dist_2d_scalar(const double* ax, const double* ay, const double* bx,
                          const double* by, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = ax[i] - bx[i];
        const double dy = ay[i] - by[i];
        acc += std::sqrt(dx * dx + dy * dy);
    }
    return acc;
}

double sum_dist_point_2d_scalar(const double* xs, const double* ys, std::size_t n,
                                double cx, double cy) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - cx;
        const double dy = ys[i] - cy;
        acc += std::sqrt(dx * dx + dy * dy);
    }
    return acc;
}

constexpr Ops kScalarOps = {
    "scalar",
    sum_abs_dev_scalar,
    accum_abs_dev_scalar,
    sum_abs_diff_scalar,
    axpy_scalar,
    sum_dist_2d_scalar,
    sum_dist_point_2d_scalar,
};

}  // namespace

const Ops& scalar() { return kScalarOps; }

}  // namespace msl::kernels
