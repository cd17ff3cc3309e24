#pragma once
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lorentz {

/// Thread cap: min(hardware, LORENTZ_VERIFY_THREADS if set). A value of 1
/// disables threading entirely.
inline int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    int cap = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("LORENTZ_VERIFY_THREADS")) {
        int req = std::atoi(env);
        if (req >= 1 && req < cap) cap = req;
    }
    return cap;
}

/// Index-parallel map. Results must be written per-index by the body so that
/// reductions can run serially in index order (determinism).
inline void parallel_for(int n, const std::function<void(int)>& body) {
    int threads = thread_cap();
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    if (threads > n) threads = n;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([=, &body]() {
            for (int i = t; i < n; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace lorentz
