#pragma once

#include <chrono>
#include <utility>

namespace mhd::perf {

/// Monotonic wall-clock stopwatch reporting milliseconds.
class Stopwatch {
 public:
  using clock = std::chrono::steady_clock;

  Stopwatch() : start_(clock::now()) {}
  void restart() { start_ = clock::now(); }
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

 private:
  clock::time_point start_;
};

/// Runs fn and adds its wall time to `accum_ms`.
template <class Fn>
decltype(auto) timed(double& accum_ms, Fn&& fn) {
  struct Guard {
    double& acc;
    Stopwatch sw;
    ~Guard() { acc += sw.elapsed_ms(); }
  } guard{accum_ms, {}};
  return std::forward<Fn>(fn)();
}

/// Wall time of one call, in milliseconds.
template <class Fn>
double time_ms(Fn&& fn) {
  Stopwatch sw;
  std::forward<Fn>(fn)();
  return sw.elapsed_ms();
}

}  // namespace mhd::perf
