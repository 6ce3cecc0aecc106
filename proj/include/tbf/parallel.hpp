#pragma once

#include <cstddef>
#include <functional>

namespace tbf {

// Worker count for data-parallel loops. Reads TBF_LAB_THREADS when set
// (values < 1 clamp to 1), otherwise uses the hardware concurrency.
std::size_t worker_count();

// Runs fn(chunk_index) for chunk_index in [0, chunk_count) across the
// worker pool. Chunks are independent; the caller owns any output slots.
// With one worker this degenerates to a plain loop.
void parallel_chunks(std::size_t chunk_count,
                     const std::function<void(std::size_t)>& fn);

} // namespace tbf
