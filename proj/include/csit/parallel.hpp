#pragma once

#include <functional>

namespace csit {

// Worker cap: CSI_TAMPER_THREADS when set (minimum 1), otherwise the hardware
// concurrency clamped to 8.
int max_threads();

// Runs fn(chunk) for chunk = 0..n_chunks-1 on up to max_threads() workers.
// The chunk grid is fixed by the caller and each chunk owns its output slot,
// so results do not depend on the worker count. Falls back to a plain loop
// when only one worker is available. Exceptions from chunks are rethrown.
void parallel_chunks(int n_chunks, const std::function<void(int)>& fn);

} // namespace csit
