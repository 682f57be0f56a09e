#include "multsum/parallel.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace multsum {

namespace {
int g_workers = 1;
}

void set_worker_threads(int n) {
  if (n < 1) throw std::invalid_argument("worker thread count must be >= 1");
  g_workers = n;
}

int worker_threads() { return g_workers; }

std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  if (chunk_size == 0) throw std::invalid_argument("chunk_size must be positive");
  return (n + chunk_size - 1) / chunk_size;
}

void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t chunks = chunk_count(n, chunk_size);
  if (chunks == 0) return;
  const int workers = g_workers;
  if (workers == 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * chunk_size;
      const std::size_t hi = std::min(n, lo + chunk_size);
      fn(c, lo, hi);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::size_t lo = c * chunk_size;
      const std::size_t hi = std::min(n, lo + chunk_size);
      fn(c, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  const int spawned = static_cast<int>(std::min<std::size_t>(workers, chunks));
  pool.reserve(spawned);
  for (int i = 0; i < spawned - 1; ++i) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

}  // namespace multsum
