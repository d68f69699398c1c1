#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace freight {

/// Apply fn(i) for i in [0, n) across up to `workers` threads.
///
/// The index range is split into contiguous chunks, one per thread, so
/// callers that write fn's result into a preallocated slot indexed by i
/// get output that is independent of the worker count.  Reductions must
/// be done by the caller, after the call, in index order.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    if (n == 0) return;
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    const std::size_t nthreads = std::min<std::size_t>(workers, n);
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    std::vector<std::exception_ptr> errors(nthreads);

    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        threads.emplace_back([&, t, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace freight
