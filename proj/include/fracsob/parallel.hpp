#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace fracsob {

// Fans fn(i) for i in [0, count) over `threads` workers. Tasks must be pure
// or write only to their own pre-allocated slot, so the gathered result is
// identical for every thread count. threads <= 1 runs inline.
template <typename Fn>
void parallelFor(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min<int>(threads, static_cast<int>(count));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace fracsob
