#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace regvar {

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count) across `workers` threads with static
// round-robin assignment. Each index writes only its own output slots, so
// results are identical for any worker count.
inline void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    int w = std::min<std::size_t>(resolve_workers(workers), count == 0 ? 1 : count);
    if (w <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += w) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace regvar
