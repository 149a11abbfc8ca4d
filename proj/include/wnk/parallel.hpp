#ifndef WNK_PARALLEL_HPP
#define WNK_PARALLEL_HPP

// Deterministic data-parallel loop. Work items are independent; each item
// writes only to its own slot, and any reduction is done by the caller in
// index order afterwards. Results therefore do not depend on the worker
// count. WNK_THREADS caps the number of workers.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wnk {

inline int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("WNK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<long>(v, 1024);
    }
    return hw;
}

template <class Fn>
void parallel_for(std::int64_t count, Fn&& fn) {
    if (count <= 0) return;
    const int workers = std::min<std::int64_t>(max_threads(), count);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min<std::int64_t>(lo + chunk, count);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace wnk

#endif
