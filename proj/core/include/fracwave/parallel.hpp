#pragma once

#include <cstddef>
#include <functional>

namespace fracwave {

// Worker cap: FRACWAVE_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, count) on up to `workers` threads. Indices are
// split into contiguous blocks; the first exception thrown is rethrown after
// all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace fracwave
