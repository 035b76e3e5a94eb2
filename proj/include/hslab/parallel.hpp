#pragma once

#include <cstddef>
#include <functional>

namespace hslab {

/// Worker count: HSLAB_THREADS when set, hardware concurrency otherwise.
unsigned thread_count();

/// Runs fn over [0, n) split into contiguous chunks, one per worker.
/// Results must not depend on the chunking; per-index work is independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace hslab
