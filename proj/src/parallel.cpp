#include "mefkit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mefkit {

static std::atomic<int> g_threads{0};

static int detect_threads() {
    if (const char* env = std::getenv("MEFKIT_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int thread_count() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n == 0) {
        n = detect_threads();
        g_threads.store(n, std::memory_order_relaxed);
    }
    return n;
}

void set_thread_count(int n) { g_threads.store(std::max(1, n), std::memory_order_relaxed); }

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int total = end - begin;
    if (total <= 0) return;
    int workers = std::min(thread_count(), total);
    if (workers <= 1 || total < 4) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (total + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const int lo = begin + t * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace mefkit
