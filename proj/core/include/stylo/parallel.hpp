#pragma once

#include <cstddef>
#include <functional>

namespace stylo {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Tasks are indexed,
/// so callers that write only to slot i of a pre-sized output get results
/// independent of scheduling. threads <= 1 runs inline.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace stylo
