#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace heatback::detail {

// Worker count: hardware concurrency capped by HEATBACK_THREADS and by the
// job count. Never less than 1.
inline int worker_count(int njobs) {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw > 0 ? static_cast<int>(hw) : 1;
    if (const char* env = std::getenv("HEATBACK_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = static_cast<int>(std::min<long>(v, 1024));
    }
    return std::max(1, std::min(n, njobs));
}

// Runs fn(begin, end) over a static block partition of [0, njobs). Callers
// must write disjoint output slots; with that, results are independent of
// the worker count. The first worker exception is rethrown on the caller.
inline void parallel_for(int njobs, const std::function<void(int, int)>& fn) {
    const int nw = worker_count(njobs);
    if (nw <= 1) {
        fn(0, njobs);
        return;
    }
    const int chunk = (njobs + nw - 1) / nw;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(nw));
    for (int w = 0; w < nw; ++w) {
        const int b = w * chunk;
        const int e = std::min(njobs, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, w, b, e] {
            try {
                fn(b, e);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

} // namespace heatback::detail
