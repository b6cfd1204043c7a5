#pragma once

#include <cstddef>
#include <functional>

namespace greenfield {

// GREENFIELD_THREADS when set to a positive integer, otherwise 1.
std::size_t configured_threads();

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once; callers write results into per-index slots, so the
// outcome does not depend on scheduling. The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = configured_threads());

}  // namespace greenfield
