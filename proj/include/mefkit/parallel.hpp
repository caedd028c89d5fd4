#pragma once

#include <functional>

namespace mefkit {

// Worker count used by parallel_for. Resolution order: explicit
// set_thread_count() > MEFKIT_THREADS env var > hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs fn(i) for i in [begin, end), splitting the range into contiguous
// chunks across threads. Every index is processed exactly once and each
// fn(i) must be independent of the others, so results do not depend on
// the worker count.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

} // namespace mefkit
