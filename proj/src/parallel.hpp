#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sio {

/// Number of worker threads to use: explicit request, else the
/// SIO_THREADS environment variable, else the hardware concurrency.
inline int thread_budget(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SIO_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Run body(i) for i in [0, n) on up to `threads` workers.
/// The first exception thrown by any worker is rethrown on the caller.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         int threads = 0) {
    const int workers = std::min<std::size_t>(static_cast<std::size_t>(thread_budget(threads)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure = nullptr;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace sio
