#pragma once

#include <cstddef>
#include <functional>

namespace tubalrpca {

// Worker count: hardware concurrency, capped by TUBALRPCA_THREADS when set.
std::size_t thread_count();

// Splits [0, n) into contiguous chunks, one per worker, and runs
// body(begin, end) on each. Chunk boundaries depend only on n and the worker
// count; callers must not share mutable state across chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace tubalrpca
