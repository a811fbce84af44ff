#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncbohr::par {

/// Runtime switch between the OpenMP kernels and the serial reference path.
/// Both paths execute identical arithmetic per index, so results are
/// bit-for-bit equal; tests and the benchmark flip this flag.
bool& openmp_enabled();

int max_threads();

/// Evaluate f(i) for i in [0, count) into a vector. The fill is the parallel
/// kernel; consumers reduce the returned values serially, which keeps the
/// reduction order independent of the thread count.
template <typename T, typename F>
std::vector<T> map_indices(std::size_t count, F&& f) {
  std::vector<T> out(count);
  const bool use_omp = openmp_enabled();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (use_omp)
#endif
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace ncbohr::par
