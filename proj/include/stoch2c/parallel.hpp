#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace stoch2c {

// STOCH2C_THREADS caps worker count; results never depend on it.
inline unsigned max_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("STOCH2C_THREADS")) {
        unsigned cap = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

// Deterministic reduction over [begin, end): the range is cut into chunks on
// a grid that does not depend on the thread count, partials are merged in
// chunk order.  merge must be associative.
template <typename State, typename ChunkFn, typename MergeFn>
State parallel_reduce(std::uint64_t begin, std::uint64_t end, State init, ChunkFn chunk_fn,
                      MergeFn merge, std::uint64_t chunk_size = 1ull << 16) {
    if (end <= begin) return init;
    const std::uint64_t total = end - begin;
    const std::uint64_t nchunks = (total + chunk_size - 1) / chunk_size;
    unsigned workers = max_threads();
    if (nchunks < workers) workers = static_cast<unsigned>(nchunks);

    std::vector<State> partial(nchunks, init);
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c) {
            std::uint64_t b = begin + c * chunk_size;
            std::uint64_t e = std::min(end, b + chunk_size);
            partial[c] = chunk_fn(b, e);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::uint64_t c = next.fetch_add(1);
                    if (c >= nchunks) return;
                    std::uint64_t b = begin + c * chunk_size;
                    std::uint64_t e = std::min(end, b + chunk_size);
                    partial[c] = chunk_fn(b, e);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    State acc = std::move(partial[0]);
    for (std::uint64_t c = 1; c < nchunks; ++c) acc = merge(std::move(acc), std::move(partial[c]));
    return acc;
}

// Runs fn(i) for i in [0, n); each index writes its own output slot, so the
// result layout is independent of scheduling.
template <typename Fn>
void parallel_for_index(std::uint64_t n, Fn fn) {
    unsigned workers = max_threads();
    if (n < 2 || workers <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    if (workers > n) workers = static_cast<unsigned>(n);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::uint64_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace stoch2c
