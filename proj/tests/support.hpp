#pragma once

// Fixtures shared by the unit tests.

#include <random>

#include "mhd/grid.hpp"

namespace testing {

/// Fills every array with values in [lo, hi); rho and energy are shifted so
/// that the state is far from the positivity limits.
template <class Real>
mhd::ConservedState<Real> random_state(const mhd::GridShape& shape, unsigned seed,
                                       double lo = -1.0, double hi = 1.0) {
  auto st = mhd::allocate_state<Real>(shape, mhd::SchemeParams{});
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  for (auto* v : st.components())
    for (auto& x : *v) x = static_cast<Real>(u(rng));
  for (auto& x : st.rho) x += Real(3);
  for (auto& x : st.energy) x += Real(20);
  return st;
}

/// Straight recursive halving down to 64-element leaves, summed left to right.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 64) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace testing
