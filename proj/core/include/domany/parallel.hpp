#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace domany {

// Run fn(replicate, worker) for every replicate in [0, count).  Scheduling
// is dynamic, so callers must write results into per-replicate slots and
// reduce afterwards; outputs are then independent of the worker count.  The
// first exception thrown by any worker is rethrown after all workers join.
template <class Fn>
void parallel_replicates(std::int64_t count, int workers, Fn&& fn) {
    if (count <= 0) return;
    if (workers <= 1 || count == 1) {
        for (std::int64_t k = 0; k < count; ++k) fn(k, 0);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto drain = [&](int w) {
        try {
            for (;;) {
                std::int64_t k = next.fetch_add(1, std::memory_order_relaxed);
                if (k >= count) break;
                fn(k, w);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
        }
    };
    int n = int(std::min<std::int64_t>(workers, count));
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n));
    for (int w = 0; w < n; ++w) pool.emplace_back(drain, w);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace domany
