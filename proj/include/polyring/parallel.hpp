#pragma once

#include <cstddef>
#include <functional>

namespace polyring {

// Worker cap from POLYRING_LAB_THREADS (default: hardware concurrency).
// Read once per process.
unsigned thread_limit();

// Runs fn(i) for every i in [0, jobs), possibly on several workers.
// Callers must make fn(i) independent of scheduling (write results into
// slot i, derive randomness from mix_seed(seed, i), ...) so that output is
// identical for any worker count. The first exception, by lowest job index,
// is rethrown after all workers stop.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace polyring
