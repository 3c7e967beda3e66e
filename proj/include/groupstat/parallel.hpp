#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace groupstat {

// Execution mode for the data-parallel kernels.  Serial is the reference
// path; OpenMP runs the same per-item work across threads.  Every kernel
// draws item k from its own substream and reduces in index order, so both
// modes produce bit-identical results.
enum class ExecMode { Serial, OpenMP };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace groupstat
