#pragma once

#include <cstddef>
#include <functional>

namespace varkernel {

/// Process-wide worker count used by batch audits. 0 means hardware concurrency.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries depend
/// only on n and chunk, never on the thread count, so callers that derive
/// per-chunk state from the chunk index get results identical to serial runs.
void parallel_chunks(std::size_t n, std::size_t chunk,
                     const std::function<void(std::size_t chunk_index, std::size_t begin, std::size_t end)>& body);

}  // namespace varkernel
