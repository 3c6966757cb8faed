#pragma once

#include <iosfwd>
#include <string>

#include "mhd/grid.hpp"

namespace mhd {

struct SlicePlane {
  Axis normal = Axis::Z;
  int index = 0;
};

/// Comma-separated table of one plane: columns i, j (along the two in-plane
/// axes, cyclic after the normal), entropy p/rho^gamma, and the cell-centred
/// in-plane field components. Throws when the index is outside the box.
template <class Real>
void slice_export(const ConservedState<Real>& state, const SlicePlane& plane, double gamma,
                  std::ostream& out);

template <class Real>
void slice_export(const ConservedState<Real>& state, const SlicePlane& plane, double gamma,
                  const std::string& path);

Axis parse_axis(const std::string& s);

}  // namespace mhd
