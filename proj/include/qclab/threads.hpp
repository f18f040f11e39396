#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace qclab {

// Worker count for parallel scans: explicit request wins, else the
// QCLAB_THREADS environment variable, else hardware concurrency (capped).
inline int thread_budget(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QCLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(static_cast<int>(hw == 0 ? 1 : hw), 1, 16);
}

}  // namespace qclab
