#pragma once

#include <cstdint>
#include <functional>

namespace fbl {

// Worker count for parallel loops: FBL_THREADS when set (>= 1), otherwise
// the hardware concurrency.
int worker_count();

// Runs fn over contiguous chunks of [0, total). Chunk boundaries depend only
// on the worker count, never on scheduling; callers that need results
// independent of the worker count must make per-item work depend only on the
// item index.
void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t begin,
                                              std::uint64_t end)>& fn);

}  // namespace fbl
