#pragma once

#include <cstddef>
#include <functional>

namespace lazlab {

/// Worker count: hardware concurrency, capped by the LAZLAB_THREADS
/// environment variable when it is set to a positive integer.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited exactly once; results must be written to index-owned slots. The
/// first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lazlab
