#pragma once
// Fixed-size worker pool for independent sweep items. Results are written by
// index, so output order never depends on scheduling.

#include <cstddef>
#include <functional>

namespace conelab {

/// Hardware concurrency, capped by CONELAB_THREADS when it holds a positive integer.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any item is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace conelab
