#pragma once

#include <cstddef>
#include <functional>

namespace shiftlab {

/// Worker count used by parallel_for. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n) across worker threads. Chunks are static, so any body that writes
/// only to slot i gives results independent of the thread count. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace shiftlab
