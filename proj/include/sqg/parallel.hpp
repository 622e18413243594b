#ifndef SQG_PARALLEL_HPP
#define SQG_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>

namespace sqg {

/// Worker cap: SQG_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_cap();

/// Runs fn(0) ... fn(n-1) on up to thread_cap() threads. Each index is
/// handled exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The exception from the lowest
/// failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sqg

#endif
