#pragma once

#include <cstddef>
#include <functional>

namespace loplab {

// Worker count: LOPLAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Calls fn(i) for i in [0, n), spread over thread_count() workers in
// contiguous chunks. fn must only write to state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace loplab
