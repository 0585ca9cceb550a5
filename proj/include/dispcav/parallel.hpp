#pragma once
#include <cstddef>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace dispcav {

// Execution policy for the data-parallel kernels.  Every kernel has the same
// per-index body on both paths; the serial path is the reference the parallel
// one is tested against, bit for bit.
enum class Exec { serial, parallel };

namespace par {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Applies fn(i) for i in [0, n).  The parallel path requires fn to write only
// per-index state: no cross-iteration reductions, so the results cannot
// depend on how the index range is partitioned.
template <typename Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace par
}  // namespace dispcav
