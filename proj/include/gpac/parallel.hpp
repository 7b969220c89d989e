#ifndef GPAC_PARALLEL_HPP
#define GPAC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace gpac {

/// Worker cap: GPAC_THREADS when set (>=1), otherwise hardware concurrency.
std::size_t worker_count();

/// Runs fn over [begin, end) split into contiguous chunks, one per worker.
/// Results must not depend on the chunking; callers write disjoint outputs.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace gpac

#endif  // GPAC_PARALLEL_HPP
