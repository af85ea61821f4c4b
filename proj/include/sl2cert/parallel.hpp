#pragma once

#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace sl2cert {

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#if defined(_OPENMP)
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Parallel loop over [0, n). All kernels built on this perform exact integer
/// arithmetic, so the result never depends on the schedule.
template <typename F>
void parallel_for(std::int64_t n, F&& fn) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#else
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace sl2cert
