#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ntl {

/// 0 means "default": NTL_JOBS if set to a positive integer, else the
/// hardware concurrency.
std::size_t resolve_jobs(std::size_t requested);

/// Runs fn(i) for every i in [0, tasks) on up to `jobs` threads. Tasks are
/// claimed from a shared counter, so callers that need determinism write
/// per-task results and merge them in index order. The first exception thrown
/// by any task is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t tasks, std::size_t jobs, Fn&& fn) {
    jobs = resolve_jobs(jobs);
    if (jobs > tasks) jobs = tasks;
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs - 1);
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ntl
