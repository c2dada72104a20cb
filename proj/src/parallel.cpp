#include "segstat/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace segstat::parallel {

static int read_thread_cap() {
  int count = omp_get_max_threads();
  if (const char* env = std::getenv("SEGSTAT_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap >= 1 && cap < count) count = cap;
    } catch (...) {
      // malformed value: keep the OpenMP default
    }
  }
  return count < 1 ? 1 : count;
}

int thread_count() {
  static int count = read_thread_cap();
  return count;
}

}  // namespace segstat::parallel
