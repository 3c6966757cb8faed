#include "mhd/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>

#include "mhd/errors.hpp"

namespace mhd::parallel {

SlabPartition partition(int n, int workers) {
  if (workers < 1) throw Error("worker count must be positive");
  if (n < 0) throw Error("negative extent");
  if (workers > n) throw Error("more workers than slabs");
  SlabPartition part;
  part.worker_count = workers;
  part.ranges.reserve(workers);
  const int base = n / workers;
  const int extra = n % workers;
  int begin = 0;
  for (int w = 0; w < workers; ++w) {
    const int len = base + (w < extra ? 1 : 0);
    part.ranges.push_back({begin, begin + len});
    begin += len;
  }
  return part;
}

void parallel_for(const SlabPartition& part, const SlabBody& body) {
  const int count = static_cast<int>(part.ranges.size());
  if (count == 0) return;
  if (count == 1) {
    try {
      body(0, part.ranges[0]);
    } catch (const std::exception& e) {
      throw SlabError(0, e.what());
    }
    return;
  }

  std::vector<std::exception_ptr> failures(count);
#pragma omp parallel for num_threads(count) schedule(static, 1)
  for (int s = 0; s < count; ++s) {
    try {
      body(static_cast<std::size_t>(s), part.ranges[s]);
    } catch (...) {
      failures[s] = std::current_exception();
    }
  }

  for (int s = 0; s < count; ++s) {
    if (!failures[s]) continue;
    try {
      std::rethrow_exception(failures[s]);
    } catch (const std::exception& e) {
      throw SlabError(static_cast<std::size_t>(s), e.what());
    } catch (...) {
      throw SlabError(static_cast<std::size_t>(s), "unknown failure");
    }
  }
}

Executor::Executor(int workers) : workers_(workers) {
  if (workers < 1) throw Error("worker count must be positive");
}

void Executor::for_range(int n, const SlabBody& body) const {
  if (n <= 0) return;
  parallel_for(partition(n, workers_ < n ? workers_ : n), body);
}

int default_workers() {
  const char* env = std::getenv("MHD_WORKERS");
  if (env == nullptr) return 1;
  try {
    std::size_t used = 0;
    const int w = std::stoi(env, &used);
    if (used != std::string(env).size() || w < 1) return 1;
    return w;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace mhd::parallel
