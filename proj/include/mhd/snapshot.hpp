#pragma once

// Binary snapshot format (all integers and reals little-endian):
//
//   offset  size  field
//        0     8  magic "MHDSNAP\0"
//        8     4  u32 version (currently 1)
//       12    12  u32 n1, n2, n3 (storage extents)
//       24     1  u8 orientation (0 = XYZ, 1 = YZX, 2 = ZXY)
//       25     1  u8 precision (0 = single, 1 = double)
//       26     6  reserved, zero
//       32     8  f64 dx
//       40     8  f64 time
//       48     8  u64 cycle
//       56        8 arrays of n1*n2*n3 reals in order rho, mom1..3, e, b1..3,
//                 axis 1 fastest

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "mhd/grid.hpp"

namespace mhd {

inline constexpr char kSnapshotMagic[8] = {'M', 'H', 'D', 'S', 'N', 'A', 'P', '\0'};
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 56;

struct SnapshotHeader {
  std::uint32_t version = kSnapshotVersion;
  GridShape shape;
  Precision precision = Precision::Double;
  double time = 0.0;
  std::uint64_t cycle = 0;
};

using AnyState = std::variant<ConservedState<float>, ConservedState<double>>;

template <class Real>
void write_snapshot(const ConservedState<Real>& state, std::ostream& out);
template <class Real>
void write_snapshot(const ConservedState<Real>& state, const std::string& path);

SnapshotHeader read_snapshot_header(std::istream& in);

/// Reads a snapshot; `expected` rejects files whose storage shape differs.
AnyState read_snapshot(std::istream& in, std::optional<GridShape> expected = std::nullopt);
AnyState read_snapshot(const std::string& path, std::optional<GridShape> expected = std::nullopt);

}  // namespace mhd
