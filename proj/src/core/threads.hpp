#pragma once

#include <functional>

namespace nsb {

// Worker cap: NSBOX_THREADS if set (minimum 1), else the hardware thread
// count. A value of 1 makes every parallel_for run inline.
int thread_cap();

// Runs fn(i) for i in [0, n) across up to thread_cap() workers. Blocks until
// all tasks finish. fn must be safe to call concurrently for distinct i;
// exceptions from workers are rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace nsb
