#pragma once

#include <cstddef>
#include <functional>

namespace lsflow {

/// Number of worker threads used by element loops.  Defaults to the hardware
/// concurrency capped at 8; override with the LSFLOW_THREADS environment
/// variable.
int worker_count();

/// Runs fn(i) for i in [0, n) across worker_count() threads in contiguous
/// chunks.  Used for the compute phase of two-phase assembly: workers write
/// only into per-index slots, so the result is identical for any thread
/// count; the serial scatter phase then folds slots in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lsflow
