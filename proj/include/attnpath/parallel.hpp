#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace attnpath {

/// Worker count: hardware concurrency, capped by ATTNPATH_THREADS when set.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index runs
/// exactly once; the lowest-index exception is rethrown after all finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace attnpath
