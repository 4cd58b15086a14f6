#include "pdlc/parallel.hpp"

#include <omp.h>

namespace pdlc {

int resolveThreads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

}  // namespace pdlc
