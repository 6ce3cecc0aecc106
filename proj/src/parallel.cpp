#include "tbf/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tbf {

std::size_t worker_count() {
    if (const char* env = std::getenv("TBF_LAB_THREADS")) {
        try {
            long n = std::stol(env);
            if (n < 1) return 1;
            return static_cast<std::size_t>(n);
        } catch (...) {
            return 1;
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_chunks(std::size_t chunk_count,
                     const std::function<void(std::size_t)>& fn) {
    std::size_t workers = worker_count();
    if (workers > chunk_count) workers = chunk_count;
    if (workers <= 1) {
        for (std::size_t i = 0; i < chunk_count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= chunk_count) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace tbf
