#pragma once

#include <cstddef>
#include <functional>

namespace ozva {

// OZVA_THREADS if set (>= 1), else the hardware count capped at 8.
int thread_count();
// Runs fn(i) for i in [0, n). Each index writes its own output slot, so
// results do not depend on the schedule. The first exception is rethrown.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace ozva
