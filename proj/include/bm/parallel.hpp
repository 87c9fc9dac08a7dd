#pragma once

#include <functional>

namespace bm {

// Number of worker threads: hardware concurrency, capped by the BM_THREADS
// environment variable when set.
int worker_count();

// Runs fn(i) for i in [0, n) across workers. Exceptions propagate from the
// first failing index.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace bm
