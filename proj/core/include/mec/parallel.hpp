#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mec {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work is handed
/// out by an atomic counter; callers write results by index so the output
/// does not depend on the schedule. The first exception (lowest index) is
/// rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = count;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
                failed.store(true);
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace mec
