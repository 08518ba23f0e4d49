#pragma once

#include <cstddef>
#include <functional>

namespace oada {

/// Worker count used by parallel loops. Defaults to OADA_THREADS when set,
/// otherwise the hardware concurrency.
int num_threads();
void set_num_threads(int n);

/// Calls body(i) for i in [0, n) across num_threads() workers. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace oada
