#pragma once

#include <cstddef>
#include <functional>

namespace focklab {

// Worker count used by parallel_for; 0 selects hardware concurrency.
// Thread count never changes results: work items write to disjoint slots
// and callers reduce in a fixed order.
void set_thread_count(int n);
int thread_count();

// Run fn(0), ..., fn(count-1), possibly concurrently.  Each invocation must
// touch only its own outputs.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace focklab
