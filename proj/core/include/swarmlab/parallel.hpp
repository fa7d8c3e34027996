#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace swarmlab {

// Runs fn(0) .. fn(n-1) on up to `degree` worker threads. Each index is an
// independent job; callers that write results into preallocated slots get
// output identical to a serial run regardless of degree. The first exception
// (by lowest index) is rethrown after all workers stop.
inline void parallel_for(std::size_t n, int degree, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (degree <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(degree), n);
    std::atomic<std::size_t> next{0};
    std::vector<std::pair<std::size_t, std::exception_ptr>> errors(workers,
                                                                   {n, nullptr});
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    if (errors[w].second == nullptr || i < errors[w].first)
                        errors[w] = {i, std::current_exception()};
                }
            }
        });
    }
    for (std::thread& t : threads) t.join();
    std::size_t first = n;
    std::exception_ptr first_error;
    for (const auto& [index, error] : errors) {
        if (error && index < first) {
            first = index;
            first_error = error;
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace swarmlab
