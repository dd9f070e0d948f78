#pragma once

#include <cstddef>
#include <functional>

namespace fracsem {

/// Worker count: FRACSEM_THREADS if set and positive, else hardware concurrency.
unsigned max_threads();

/// Runs body(i) for i in [0, count). Each index is owned by exactly one worker,
/// so results written per index are independent of the thread count. The first
/// exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracsem
