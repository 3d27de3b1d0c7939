#pragma once

#include <functional>

#include "hbsumma/series.hpp"

namespace hbsumma {

// min(hardware concurrency, HBSUMMA_THREADS when set), at least 1.
int worker_count();

// Runs fn(i) for 0 <= i < n across the workers. Work items must be pure or
// write only to their own index-addressed slots, so output ordering stays
// deterministic regardless of scheduling. The first worker exception is
// rethrown on the calling thread.
void parallel_for(Index n, const std::function<void(Index)>& fn);

}  // namespace hbsumma
