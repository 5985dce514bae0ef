#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace efx {

/// Execution policy for the data-parallel kernels. Results are identical
/// under both policies; reductions use order-independent minima.
enum class Exec { serial, parallel };

inline std::size_t max_threads() {
#ifdef _OPENMP
  return static_cast<std::size_t>(omp_get_max_threads());
#else
  return 1;
#endif
}

inline std::size_t thread_id() {
#ifdef _OPENMP
  return static_cast<std::size_t>(omp_get_thread_num());
#else
  return 0;
#endif
}

} // namespace efx
