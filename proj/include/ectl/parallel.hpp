#ifndef ECTL_PARALLEL_HPP
#define ECTL_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ectl {

// Thread cap: ENSEMBLE_CTL_THREADS if set, else hardware concurrency.
inline unsigned max_threads() {
    if (const char* env = std::getenv("ENSEMBLE_CTL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Chunked parallel map over [0, n). Writes must target disjoint slots;
// reductions stay sequential elsewhere for bitwise reproducibility.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const unsigned nt = std::min<std::size_t>(max_threads(), n ? n : 1);
    if (nt <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace ectl

#endif
