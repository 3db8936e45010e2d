#pragma once

#include <cstddef>
#include <functional>

namespace syncnet {

/// Worker count: SYNCNET_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) across up to `workers` threads. Tasks are
/// handed out by index; callers write results into slot i, so the assembled
/// output never depends on completion order. The first exception thrown by a
/// task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace syncnet
