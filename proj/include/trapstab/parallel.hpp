#pragma once

#include <cstddef>
#include <functional>

namespace trapstab {

/// Worker count from TRAPSTAB_THREADS (0 or unset means hardware concurrency).
unsigned default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Indices are handed out dynamically; callers write to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace trapstab
