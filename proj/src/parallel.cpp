#include "ncbohr/parallel.hpp"

namespace ncbohr::par {

bool& openmp_enabled() {
#ifdef _OPENMP
  static bool enabled = true;
#else
  static bool enabled = false;
#endif
  return enabled;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ncbohr::par
