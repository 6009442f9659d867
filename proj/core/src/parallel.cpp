#include "residua/parallel.hpp"

#include <cstdlib>

namespace residua {

namespace {

int initial_thread_count() {
  if (const char* env = std::getenv("RESIDUA_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 256);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::atomic<int>& thread_count_slot() {
  static std::atomic<int> n{initial_thread_count()};
  return n;
}

}  // namespace

int thread_count() { return thread_count_slot().load(); }

void set_thread_count(int n) {
  thread_count_slot().store(std::clamp(n, 1, 256));
}

}  // namespace residua
