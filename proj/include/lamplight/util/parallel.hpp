#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lamplight {

/// Worker count used by trial loops; 0 means hardware concurrency.
void set_thread_count(unsigned threads) noexcept;
unsigned thread_count() noexcept;

/// Runs `fn(trial)` for every trial index and returns the results in index
/// order. Each trial derives its own RNG stream from its index, so the output
/// does not depend on the worker count.
template <class Result, class Fn>
std::vector<Result> run_trials(std::size_t trials, Fn&& fn) {
    std::vector<Result> out(trials);
    const std::size_t workers = std::min<std::size_t>(std::max(1u, thread_count()), std::max<std::size_t>(trials, 1));
    if (workers <= 1) {
        for (std::size_t t = 0; t < trials; ++t) out[t] = fn(t);
        return out;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t t = w; t < trials; t += workers) out[t] = fn(t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace lamplight
