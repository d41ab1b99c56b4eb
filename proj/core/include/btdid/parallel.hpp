#pragma once

#include <cstddef>
#include <functional>

namespace btdid {

/// Worker cap: BTD_IDENTIFY_THREADS if set and positive, else hardware concurrency.
std::size_t thread_budget();

/// Runs body(i) for i in [0, n). Each index writes only its own slot, so
/// results do not depend on scheduling. Exceptions are rethrown (lowest index first).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace btdid
