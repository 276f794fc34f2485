#pragma once

#include <cstddef>
#include <functional>

namespace vne {

/// Worker count: VNE_THREADS when set to a positive integer, otherwise the
/// number of logical CPUs (at least 1).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 means
/// default_thread_count()). Indices are claimed dynamically; callers write
/// results into pre-sized slots so output never depends on scheduling.
/// If bodies throw, the exception from the smallest failing index is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace vne
