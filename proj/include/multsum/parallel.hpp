#pragma once

#include <cstddef>
#include <functional>

namespace multsum {

// Global worker-thread count used by the parallel helpers.  Results are
// required to be independent of this setting: every parallel loop in the
// library writes into per-chunk slots that are reduced in chunk order.
void set_worker_threads(int n);
int worker_threads();

// Runs fn(chunk_index, lo, hi) over [0, n) split into fixed-size chunks.
// The chunk decomposition depends only on n and chunk_size, never on the
// thread count, so per-chunk outputs are reproducible.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t chunk_count(std::size_t n, std::size_t chunk_size);

}  // namespace multsum
