#pragma once

#include <cstddef>
#include <functional>

namespace neurohotnet {

/// Environment variable consulted when no explicit thread count is given.
inline constexpr const char* kThreadsEnvVar = "NEUROHOTNET_THREADS";

/// Explicit value if > 0, else $NEUROHOTNET_THREADS, else hardware concurrency.
std::size_t resolve_threads(std::size_t requested = 0);

/// Runs body(begin, end) over a static partition of [0, count) on up to
/// `threads` workers. The partition never affects per-index results; callers
/// keep reductions per index so output is independent of the thread count.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace neurohotnet
