#ifndef FLSUITE_PARALLEL_HPP
#define FLSUITE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace flsuite {

/// Worker count from FLSUITE_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();

/// Runs body(i) for i in [0,count) over a static block partition. Each index
/// is processed exactly once; results must be written to per-index slots so
/// the outcome does not depend on the partition.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace flsuite

#endif  // FLSUITE_PARALLEL_HPP
