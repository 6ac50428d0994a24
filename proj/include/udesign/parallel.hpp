#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <thread>
#include <vector>

namespace udesign {

// Worker cap shared by all parallel loops. UDESIGN_THREADS overrides the
// hardware default; values < 1 are clamped to 1.
inline int thread_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("UDESIGN_THREADS")) {
            int v = std::atoi(env);
            return v >= 1 ? v : 1;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return cap;
}

// Chunked parallel reduction. Chunk boundaries depend only on n, never on the
// worker count, and chunk results are merged in chunk order, so the result is
// bitwise reproducible for any UDESIGN_THREADS setting.
//
//   make()            -> fresh accumulator
//   body(acc, i)      -> fold index i into acc
//   merge(total, acc) -> fold a chunk accumulator into the running total
template <typename MakeAcc, typename Body, typename Merge>
auto parallel_reduce(std::size_t n, MakeAcc make, Body body, Merge merge)
    -> decltype(make()) {
    using Acc = decltype(make());
    constexpr std::size_t chunk = 1024;
    const std::size_t nchunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), nchunks));
    Acc total = make();
    if (workers <= 1) {
        Acc acc = make();
        for (std::size_t i = 0; i < n; ++i) body(acc, i);
        merge(total, acc);
        return total;
    }
    std::vector<std::optional<Acc>> results(nchunks);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([w, workers, nchunks, n, &results, &make, &body] {
            for (std::size_t c = static_cast<std::size_t>(w); c < nchunks;
                 c += static_cast<std::size_t>(workers)) {
                Acc acc = make();
                const std::size_t lo = c * chunk;
                const std::size_t hi = std::min(n, lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) body(acc, i);
                results[c].emplace(std::move(acc));
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& r : results) merge(total, *r);
    return total;
}

}  // namespace udesign
