#pragma once
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string_view>
#include <thread>
#include <vector>

#include "convval/vec.hpp"

namespace convval {

// fixed-order pairwise summation: bit-reproducible for a given input order
inline double pairwise_sum(const double* x, size_t len) {
    if (len == 0) return 0.0;
    if (len <= 8) {
        double s = x[0];
        for (size_t i = 1; i < len; ++i) s += x[i];
        return s;
    }
    size_t half = len / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, len - half);
}

inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

inline Vec pairwise_sum_vec(const std::vector<Vec>& xs, int dim) {
    Vec r(dim);
    std::vector<double> comp(xs.size());
    for (int c = 0; c < dim; ++c) {
        for (size_t i = 0; i < xs.size(); ++i) comp[i] = xs[i][c];
        r[c] = pairwise_sum(comp);
    }
    return r;
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) { h ^= c; h *= 1099511628211ull; }
    return h;
}

// mt19937_64 with a hand-rolled uniform so streams do not depend on the
// standard library's distribution internals
struct RandomStream {
    std::mt19937_64 eng;

    explicit RandomStream(uint64_t seed) : eng(seed) {}

    double u01() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(eng() % static_cast<uint64_t>(hi - lo + 1));
    }

    Vec uniform_vec(int n, double lo, double hi) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

    Vec unit_vec(int n) {
        for (;;) {
            Vec v(n);
            double s = 0.0;
            for (int i = 0; i < n; ++i) { v[i] = uniform(-1.0, 1.0); s += v[i] * v[i]; }
            if (s > 1e-4 && s <= 1.0) return (1.0 / std::sqrt(s)) * v;
        }
    }

    Mat rotation(int n) {
        if (n == 1) { Mat r(1); r(0, 0) = 1.0; return r; }
        if (n == 2) return rotation2(uniform(0.0, 6.283185307179586));
        return rotation3(unit_vec(3), uniform(0.0, 6.283185307179586));
    }
};

inline uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t index) {
    return base ^ fnv1a(tag) ^ (0x9e3779b97f4a7c15ull * (index + 1));
}

// index-keyed parallel map: each task writes only its own slot, so the result
// does not depend on thread count or scheduling; nested calls run sequentially
inline bool& parallel_worker_flag() {
    thread_local bool inside = false;
    return inside;
}

inline void parallel_for(size_t count, const std::function<void(size_t)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    size_t workers = std::min<size_t>(hw == 0 ? 1 : hw, 8);
    if (const char* env = std::getenv("CONVVAL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) workers = static_cast<size_t>(v);
    }
    if (workers <= 1 || count <= 1 || parallel_worker_flag()) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    workers = std::min(workers, count);
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            parallel_worker_flag() = true;
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    for (auto& t : pool) t.join();
}

} // namespace convval
