#pragma once

#include <cstddef>
#include <functional>

namespace fm {

// Worker count: FM_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int thread_count();

// Runs body(i) for i in [0, n) over contiguous static blocks. The block a
// given index lands in depends only on n and thread_count(), so callers that
// write per-index results and reduce afterwards stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fm
