#pragma once

// Fan-out helper for embarrassingly parallel sample loops. Results are
// written by index, so output order never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace betapenta {

/// Worker count: hardware concurrency, capped by BETAPENTA_THREADS if set.
inline unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BETAPENTA_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Calls fn(i) for i in [0, count). The first exception escaping fn is
/// rethrown on the calling thread after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex guard;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(guard);
                    if (!first) first = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

} // namespace betapenta
