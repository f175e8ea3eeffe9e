#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lyco {

// Run fn(i) for i in [0, n) on `workers` threads. Each index writes its own
// slot, so the result is independent of scheduling; reduce sequentially by
// index afterwards for bit-identical output at any worker count.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int workers, Fn&& fn) {
    std::vector<T> out(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int k = std::min<int>(workers, static_cast<int>(n));
    pool.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (failed.load() && err) std::rethrow_exception(err);
    return out;
}

struct MeanStderr {
    double mean = 0;
    double stderr_ = 0;
};

// Sample mean and stderr (sd / sqrt(n)), reduced in index order.
inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr r;
    if (xs.empty()) return r;
    double s = 0;
    for (double v : xs) s += v;
    r.mean = s / static_cast<double>(xs.size());
    if (xs.size() < 2) return r;
    double q = 0;
    for (double v : xs) q += (v - r.mean) * (v - r.mean);
    r.stderr_ = std::sqrt(q / (static_cast<double>(xs.size() - 1) * static_cast<double>(xs.size())));
    return r;
}

} // namespace lyco
