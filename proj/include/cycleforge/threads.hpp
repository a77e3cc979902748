#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace cycleforge::util {

/// Worker cap for the library's fan-out points.  CYCLEFORGE_THREADS
/// overrides hardware concurrency; values < 1 mean single-threaded.
inline int thread_budget() {
    if (const char* env = std::getenv("CYCLEFORGE_THREADS")) {
        const int v = std::atoi(env);
        return std::max(1, v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Apply fn to 0..n-1, possibly in parallel, collecting results in index
/// order so reductions stay deterministic.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    const int budget = std::min<int>(thread_budget(), static_cast<int>(n));
    if (budget <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < budget; ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) out[i] = fn(i);
        });
    for (auto& t : workers) t.join();
    return out;
}

} // namespace cycleforge::util
