#pragma once

#include <cstddef>
#include <functional>

namespace isodist {

/// Worker count: ISODIST_THREADS if set to a positive integer, otherwise
/// the hardware concurrency. Never affects results, only scheduling.
int worker_count();

/// Runs body(chunk) for chunk in [0, chunks) on up to worker_count() threads.
/// Callers write into per-chunk slots and merge in chunk order, so results do
/// not depend on the thread count. The first exception thrown is rethrown.
void parallel_for_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace isodist
