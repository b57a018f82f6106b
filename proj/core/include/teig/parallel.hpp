#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace teig {

/// Runs fn(0..count-1) on up to `jobs` worker threads (0 = hardware
/// concurrency). Work items must write only to their own slots; exceptions
/// propagate from the first failing index.
inline void parallel_for_index(int count, int jobs, const std::function<void(int)>& fn)
{
    if (count <= 0) return;
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    jobs = std::min(jobs, count);
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w]() {
            try {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= count) return;
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
                next.store(count); // drain remaining work
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace teig
