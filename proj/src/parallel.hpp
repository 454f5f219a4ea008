#ifndef WCCA_SRC_PARALLEL_HPP
#define WCCA_SRC_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

// Keep the BLAS backend single-threaded while our own pool is active;
// weak so the build does not depend on any particular backend.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace wcca::detail {

inline int default_thread_count() {
    if (const char* env = std::getenv("WCCA_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Run fn(0..count-1) across up to `threads` workers. Work items write to
/// preallocated slots indexed by their argument, so results are identical
/// for every schedule. Exceptions propagate from the first failing item.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (threads > count) threads = count;
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    if (openblas_set_num_threads) openblas_set_num_threads(1);
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= count) break;
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
                next.store(count);  // drain remaining work
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace wcca::detail

#endif // WCCA_SRC_PARALLEL_HPP
