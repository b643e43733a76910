#pragma once

#include <cstdint>
#include <functional>

namespace netgof {

int default_threads();

// Runs fn(0..count-1) on up to `threads` workers. Each index must write only
// its own output slot; combined with counter-based streams this keeps results
// independent of the schedule and of the thread count.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn);

} // namespace netgof
