#pragma once

#include <cstddef>
#include <functional>

namespace caputolab {

/// Number of workers to use for `requested` (0 means hardware parallelism).
[[nodiscard]] std::size_t resolve_jobs(std::size_t requested);

/// Runs task(i) for i in [0, count) on up to `jobs` threads.
///
/// Tasks are handed out through a shared counter and must write only to
/// their own output slot; results are then independent of scheduling. The
/// first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& task);

}  // namespace caputolab
