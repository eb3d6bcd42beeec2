#pragma once

#include <cstddef>
#include <functional>

namespace specshare
{

/// Worker count: SPECSHARE_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// runs exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. After a failure no new indices
/// start; the exception of the lowest failed index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace specshare
