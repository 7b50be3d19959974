#pragma once

#include <cstddef>
#include <functional>
#include <mutex>

namespace trisum {

// TRISUM_THREADS if set and positive, otherwise the hardware concurrency.
int thread_budget();

// Runs f(i) for i in [0, n) on up to `threads` workers (0 = thread_budget()). Static round-robin
// assignment; callers write per-index results and reduce them in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, int threads = 0);

// FFTW planner calls are not thread safe; every plan create/destroy takes this lock.
std::mutex& fftw_planner_mutex();

} // namespace trisum
