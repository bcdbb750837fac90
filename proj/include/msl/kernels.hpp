#pragma once

#include <cstddef>
#include <cstdint>

namespace msl::kernels {

// Data-parallel primitives over contiguous double arrays. Scalar reference
// implementations are always available; wider variants are selected at
// runtime from CPU features. All variants compute the same quantities up to
// floating-point reassociation of the accumulators.
struct Ops {
    const char* name;

    // sum_i |xs[i] - c|
    double (*sum_abs_dev)(const double* xs, std::size_t n, double c);

    // out[i] += |xs[i] - c|
    void (*accum_abs_dev)(double* out, const double* xs, std::size_t n, double c);

    // sum_i |a[i] - b[i]|
    double (*sum_abs_diff)(const double* a, const double* b, std::size_t n);

    // y[i] += s * x[i]
    void (*axpy)(double* y, const double* x, double s, std::size_t n);

    // sum_i hypot(ax[i]-bx[i], ay[i]-by[i])
    double (*sum_dist_2d)(const double* ax, const double* ay, const double* bx,
                          const double* by, std::size_t n);

    // sum_i hypot(xs[i]-cx, ys[i]-cy)
    double (*sum_dist_point_2d)(const double* xs, const double* ys, std::size_t n,
                                double cx, double cy);
};

/// Scalar reference table (always valid).
const Ops& scalar();

/// AVX2 table, or nullptr when the binary or the CPU does not support it.
const Ops* avx2();

/// Table selected for this process. Honors the MSL_KERNELS environment
/// variable ("scalar", "avx2" or "auto") on first use.
const Ops& active();

/// Force a specific table ("auto", "scalar", "avx2"). Throws std::runtime_error
/// if the requested table is unavailable. Intended for tests and experiments.
void select(const char* name);

// Windowed minima over a sequence, used by the trajectory dynamic program.
// Sequential by nature (monotone deque), one implementation only.
//
// out_val[i] = min in[max(0,i-w) .. i], out_idx[i] = argmin (smallest index on ties)
void sliding_min_backward(const double* in, std::size_t n, std::size_t w,
                          double* out_val, std::int32_t* out_idx);
// out_val[i] = min in[i .. min(n-1,i+w)], out_idx[i] = argmin (smallest index on ties)
void sliding_min_forward(const double* in, std::size_t n, std::size_t w,
                         double* out_val, std::int32_t* out_idx);

}  // namespace msl::kernels
