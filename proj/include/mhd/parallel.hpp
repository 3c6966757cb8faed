#pragma once

// Fork-join execution over slabs of the outermost grid axis.
//
// Every parallel region in the solver goes through parallel_for: the index
// space is cut into contiguous, balanced ranges (one per worker), each range
// runs exactly once, and the call returns only after all of them finished.
// Bodies must write disjoint memory, which makes results independent of the
// worker count. Reductions use a fixed pairwise tree so that they are also
// bitwise reproducible.

#include <cstddef>
#include <functional>
#include <vector>

namespace mhd::parallel {

struct Range {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct SlabPartition {
  int worker_count = 1;
  std::vector<Range> ranges;
};

/// Balanced contiguous split of [0, n) into `workers` ranges; sizes differ by
/// at most one and the larger ranges come first. Throws if workers > n.
SlabPartition partition(int n, int workers);

using SlabBody = std::function<void(std::size_t slab, Range range)>;

/// Runs body once per range. An exception in any slab is rethrown as
/// SlabError naming the lowest failing slab index.
void parallel_for(const SlabPartition& part, const SlabBody& body);

/// Worker count carried through the solver API.
class Executor {
 public:
  explicit Executor(int workers = 1);
  int workers() const { return workers_; }

  /// parallel_for over [0, n) with min(workers, n) slabs.
  void for_range(int n, const SlabBody& body) const;

 private:
  int workers_;
};

/// Reads MHD_WORKERS; falls back to 1 when unset or malformed.
int default_workers();

inline constexpr std::size_t kReduceLeaf = 64;
inline constexpr int kReduceParallelDepth = 6;

namespace detail {

template <class T, class Leaf>
T pairwise(std::size_t lo, std::size_t hi, const Leaf& leaf) {
  if (hi - lo <= kReduceLeaf) return leaf(lo, hi);
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise<T>(lo, mid, leaf) + pairwise<T>(mid, hi, leaf);
}

inline void collect_nodes(std::size_t lo, std::size_t hi, int depth,
                          std::vector<std::pair<std::size_t, std::size_t>>& out) {
  if (depth == kReduceParallelDepth || hi - lo <= kReduceLeaf) {
    out.emplace_back(lo, hi);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  collect_nodes(lo, mid, depth + 1, out);
  collect_nodes(mid, hi, depth + 1, out);
}

template <class T>
T combine_nodes(std::size_t lo, std::size_t hi, int depth, const std::vector<T>& partial,
                std::size_t& cursor) {
  if (depth == kReduceParallelDepth || hi - lo <= kReduceLeaf) return partial[cursor++];
  const std::size_t mid = lo + (hi - lo) / 2;
  T left = combine_nodes<T>(lo, mid, depth + 1, partial, cursor);
  T right = combine_nodes<T>(mid, hi, depth + 1, partial, cursor);
  return left + right;
}

}  // namespace detail

/// Pairwise sum over [0, n): the range is halved recursively down to leaves
/// of at most kReduceLeaf elements, and `leaf(lo, hi)` sums a leaf
/// sequentially. The tree shape depends only on n, so the result is the same
/// for every worker count.
template <class T, class Leaf>
T tree_reduce(std::size_t n, const Leaf& leaf, const Executor& exec = Executor{}) {
  if (n == 0) return T{};
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  detail::collect_nodes(0, n, 0, nodes);
  std::vector<T> partial(nodes.size());
  exec.for_range(static_cast<int>(nodes.size()), [&](std::size_t, Range r) {
    for (int t = r.begin; t < r.end; ++t)
      partial[t] = detail::pairwise<T>(nodes[t].first, nodes[t].second, leaf);
  });
  std::size_t cursor = 0;
  return detail::combine_nodes<T>(0, n, 0, partial, cursor);
}

}  // namespace mhd::parallel
