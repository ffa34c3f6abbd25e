#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace seqlimit {

/// Worker count: `requested` when positive, else $SEQLIMIT_THREADS, else
/// the hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested = 0);

/// Process-wide default used by operations that do not take an explicit
/// thread count. 0 means "resolve from the environment".
void set_default_threads(unsigned threads);
unsigned default_threads();

/// Calls fn(i) for every i in [0, count) using static contiguous blocks.
/// Results must be written to per-index slots so the merge is independent
/// of scheduling. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(resolve_threads(threads), count == 0 ? 1 : count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            const std::size_t begin = count * t / workers;
            const std::size_t end = count * (t + 1) / workers;
            pool.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace seqlimit
