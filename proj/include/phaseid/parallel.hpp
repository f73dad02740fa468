#pragma once

// OpenMP shims. Use PHASEID_OMP(...) for every pragma so a build without
// OpenMP compiles the same kernels serially.

#if defined(_MSC_VER)
#define PHASEID_PRAGMA(X) __pragma(X)
#else
#define PHASEID_PRAGMA(X) _Pragma(#X)
#endif

#ifdef _OPENMP
#include <omp.h>
#define PHASEID_OMP(ARGS) PHASEID_PRAGMA(omp ARGS)
#else
#define PHASEID_OMP(ARGS)
#endif

namespace phaseid {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

/// Kernel selection for routines that ship both a serial reference and a
/// parallel implementation. Both produce bit-identical results.
enum class Backend { Serial, Parallel };

}  // namespace phaseid
