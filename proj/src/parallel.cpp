#include "graphonlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace graphonlab {

int thread_count() {
  if (const char* env = std::getenv("GRAPHONLAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

}  // namespace graphonlab
