#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace lqflab::detail {

/// Calls f(i) for every i in [0, n) on up to `jobs` threads. The first
/// exception thrown by any call is rethrown after all workers stop.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
    const std::size_t workers = std::min<std::size_t>(jobs == 0 ? 1 : jobs, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

/// Smallest i in [0, n) with pred(i), evaluating blocks of candidates in
/// parallel so the answer does not depend on `jobs`.
template <class Pred>
std::optional<std::size_t> first_match(std::size_t n, unsigned jobs, Pred&& pred) {
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            if (pred(i)) return i;
        return std::nullopt;
    }
    const std::size_t block = std::size_t{8} * jobs;
    for (std::size_t start = 0; start < n; start += block) {
        const std::size_t len = std::min(block, n - start);
        std::vector<char> hit(len, 0);
        parallel_for(len, jobs, [&](std::size_t i) { hit[i] = pred(start + i) ? 1 : 0; });
        for (std::size_t i = 0; i < len; ++i)
            if (hit[i]) return start + i;
    }
    return std::nullopt;
}

}  // namespace lqflab::detail
