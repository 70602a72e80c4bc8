#pragma once

#include <cstddef>
#include <functional>

namespace longmem {

// Run fn(0..count-1) across `threads` workers (1 = inline). Work items must be
// independent; the first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace longmem
