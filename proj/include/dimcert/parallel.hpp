#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dimcert {

/// Kernels with a data-parallel inner loop take an ExecPolicy.  Serial is the
/// reference implementation; Parallel uses OpenMP when compiled in and must
/// produce bit-identical results (reductions are merged deterministically).
enum class ExecPolicy { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

} // namespace dimcert
