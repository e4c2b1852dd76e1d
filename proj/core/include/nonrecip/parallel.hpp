#pragma once

#include <cstddef>
#include <functional>

namespace nonrecip::parallel {

/// Hardware concurrency, at least 1.
std::size_t default_workers();

/// Splits [0, n) into consecutive chunks of `chunk_size` and calls
/// fn(chunk, begin, end) for each on up to `workers` threads (0 = default).
/// Chunk boundaries do not depend on the worker count, so callers that reduce
/// per-chunk results in chunk order get schedule-independent output.
/// The first exception thrown by any chunk is rethrown after all threads join.
void for_chunks(std::size_t n, std::size_t chunk_size,
                const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>& fn,
                std::size_t workers = 0);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  return chunk_size == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

}  // namespace nonrecip::parallel
