#pragma once

#include <cstddef>
#include <functional>

namespace saa {

// Global worker cap shared by all batch loops. 0 restores the default
// (SAA_THREADS environment variable if set, otherwise hardware concurrency).
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for every i in [0, n), splitting the index range into contiguous
// chunks over at most max_threads() workers. Callers must write results to
// disjoint slots indexed by i so the observable state is schedule-free.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace saa
