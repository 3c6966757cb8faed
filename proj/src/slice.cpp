#include "mhd/slice.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "mhd/errors.hpp"

namespace mhd {

Axis parse_axis(const std::string& s) {
  if (s == "x" || s == "X") return Axis::X;
  if (s == "y" || s == "Y") return Axis::Y;
  if (s == "z" || s == "Z") return Axis::Z;
  throw Error("unknown axis '" + s + "'");
}

template <class Real>
void slice_export(const ConservedState<Real>& state, const SlicePlane& plane, double gamma,
                  std::ostream& out) {
  const GridShape& s = state.shape;
  const int normal = static_cast<int>(plane.normal);
  const int n_normal = s.physical_extent(plane.normal);
  if (plane.index < 0 || plane.index >= n_normal)
    throw Error("slice index " + std::to_string(plane.index) + " out of range [0, " +
                std::to_string(n_normal) + ")");

  const Axis au = static_cast<Axis>((normal + 1) % 3);
  const Axis aw = static_cast<Axis>((normal + 2) % 3);
  const int nu = s.physical_extent(au), nw = s.physical_extent(aw);
  const auto centred = face_to_center(state);
  const Real gm1 = static_cast<Real>(gamma - 1.0);

  out << "i,j,entropy,b" << char('x' + static_cast<int>(au)) << ",b"
      << char('x' + static_cast<int>(aw)) << '\n';
  out << std::setprecision(17);
  for (int w = 0; w < nw; ++w) {
    for (int u = 0; u < nu; ++u) {
      std::array<int, 3> storage{};
      storage[s.orientation.slot(plane.normal)] = plane.index;
      storage[s.orientation.slot(au)] = u;
      storage[s.orientation.slot(aw)] = w;
      const std::size_t c = s.index(storage[0], storage[1], storage[2]);
      const Real b1 = centred[0].values[c], b2 = centred[1].values[c], b3 = centred[2].values[c];
      const Real p = gas_pressure(gm1, state.rho[c], state.mom1[c], state.mom2[c], state.mom3[c],
                                  state.energy[c], b1, b2, b3);
      const double entropy = double(p) / std::pow(double(state.rho[c]), gamma);
      out << u << ',' << w << ',' << entropy << ','
          << double(centred[s.orientation.slot(au)].values[c]) << ','
          << double(centred[s.orientation.slot(aw)].values[c]) << '\n';
    }
  }
}

template <class Real>
void slice_export(const ConservedState<Real>& state, const SlicePlane& plane, double gamma,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  slice_export(state, plane, gamma, out);
}

template void slice_export<float>(const ConservedState<float>&, const SlicePlane&, double,
                                  std::ostream&);
template void slice_export<double>(const ConservedState<double>&, const SlicePlane&, double,
                                   std::ostream&);
template void slice_export<float>(const ConservedState<float>&, const SlicePlane&, double,
                                  const std::string&);
template void slice_export<double>(const ConservedState<double>&, const SlicePlane&, double,
                                   const std::string&);

}  // namespace mhd
