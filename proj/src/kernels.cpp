#include "msl/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <stdexcept>
#include <string>

namespace msl::kernels {

namespace detail {
const Ops* avx2_table();  // defined in kernels_avx2.cpp
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Ops* resolve(const char* name) {
    const std::string mode = name ? name : "auto";
    if (mode == "scalar") return &scalar();
    if (mode == "avx2") {
        const Ops* t = avx2();
        if (!t) throw std::runtime_error("kernels: avx2 requested but unavailable");
        return t;
    }
    if (mode == "auto") {
        if (const Ops* t = avx2()) return t;
        return &scalar();
    }
    throw std::runtime_error("kernels: unknown table '" + mode + "'");
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops* avx2() {
    const Ops* t = detail::avx2_table();
    return (t && cpu_has_avx2()) ? t : nullptr;
}

const Ops& active() {
    const Ops* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = resolve(std::getenv("MSL_KERNELS"));
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void select(const char* name) {
    g_active.store(resolve(name), std::memory_order_release);
}

void sliding_min_backward(const double* in, std::size_t n, std::size_t w,
                          double* out_val, std::int32_t* out_idx) {
    std::deque<std::size_t> q;  // indices with nondecreasing values, front = argmin
    for (std::size_t i = 0; i < n; ++i) {
        while (!q.empty() && in[q.back()] > in[i]) q.pop_back();
        q.push_back(i);
        if (q.front() + w < i) q.pop_front();
        out_val[i] = in[q.front()];
        out_idx[i] = static_cast<std::int32_t>(q.front());
    }
}

void sliding_min_forward(const double* in, std::size_t n, std::size_t w,
                         double* out_val, std::int32_t* out_idx) {
    std::deque<std::size_t> q;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = n - 1 - k;
        while (!q.empty() && in[q.back()] >= in[i]) q.pop_back();
        q.push_back(i);
        if (q.front() > i + w) q.pop_front();
        out_val[i] = in[q.front()];
        out_idx[i] = static_cast<std::int32_t>(q.front());
    }
}

}  // namespace msl::kernels
