#include "mhd/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

template <class UInt>
void put_le(std::vector<unsigned char>& buf, UInt v) {
  for (std::size_t b = 0; b < sizeof(UInt); ++b)
    buf.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xFF));
}

template <class UInt>
UInt get_le(const unsigned char* p) {
  UInt v = 0;
  for (std::size_t b = 0; b < sizeof(UInt); ++b) v |= static_cast<UInt>(p[b]) << (8 * b);
  return v;
}

template <class Real>
using Bits = std::conditional_t<sizeof(Real) == 4, std::uint32_t, std::uint64_t>;

template <class Real>
void encode(const std::vector<Real>& src, std::vector<unsigned char>& buf) {
  buf.clear();
  buf.reserve(src.size() * sizeof(Real));
  for (Real x : src) put_le(buf, std::bit_cast<Bits<Real>>(x));
}

template <class Real>
void decode(const std::vector<unsigned char>& buf, std::vector<Real>& dst) {
  const std::size_t n = buf.size() / sizeof(Real);
  dst.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = std::bit_cast<Real>(get_le<Bits<Real>>(buf.data() + i * sizeof(Real)));
}

template <class Real>
ConservedState<Real> read_payload(std::istream& in, const SnapshotHeader& h) {
  ConservedState<Real> st;
  st.shape = h.shape;
  st.time = h.time;
  st.cycle = h.cycle;
  const std::size_t bytes = h.shape.cells() * sizeof(Real);
  std::vector<unsigned char> buf(bytes);
  std::size_t k = 0;
  for (auto* comp : st.components()) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in.gcount()) != bytes)
      throw Error("truncated payload at component " + std::to_string(k));
    decode(buf, *comp);
    ++k;
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error("trailing data after payload");
  return st;
}

}  // namespace

template <class Real>
void write_snapshot(const ConservedState<Real>& state, std::ostream& out) {
  std::vector<unsigned char> head;
  head.insert(head.end(), std::begin(kSnapshotMagic), std::end(kSnapshotMagic));
  put_le<std::uint32_t>(head, kSnapshotVersion);
  put_le<std::uint32_t>(head, static_cast<std::uint32_t>(state.shape.n1));
  put_le<std::uint32_t>(head, static_cast<std::uint32_t>(state.shape.n2));
  put_le<std::uint32_t>(head, static_cast<std::uint32_t>(state.shape.n3));
  head.push_back(static_cast<unsigned char>(state.shape.orientation.index()));
  head.push_back(sizeof(Real) == 4 ? 0 : 1);
  head.insert(head.end(), 6, 0);
  put_le(head, std::bit_cast<std::uint64_t>(state.shape.dx));
  put_le(head, std::bit_cast<std::uint64_t>(state.time));
  put_le<std::uint64_t>(head, state.cycle);
  out.write(reinterpret_cast<const char*>(head.data()), static_cast<std::streamsize>(head.size()));

  std::vector<unsigned char> buf;
  for (const auto* comp : state.components()) {
    encode(*comp, buf);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw Error("snapshot write failed");
}

template <class Real>
void write_snapshot(const ConservedState<Real>& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_snapshot(state, out);
}

SnapshotHeader read_snapshot_header(std::istream& in) {
  unsigned char h[kSnapshotHeaderBytes];
  in.read(reinterpret_cast<char*>(h), sizeof h);
  if (in.gcount() < static_cast<std::streamsize>(sizeof kSnapshotMagic) ||
      std::memcmp(h, kSnapshotMagic, sizeof kSnapshotMagic) != 0)
    throw Error("not a snapshot file");
  if (static_cast<std::size_t>(in.gcount()) != sizeof h) throw Error("corrupt header: truncated");

  SnapshotHeader out;
  out.version = get_le<std::uint32_t>(h + 8);
  if (out.version != kSnapshotVersion)
    throw Error("unsupported snapshot version " + std::to_string(out.version));
  out.shape.n1 = static_cast<int>(get_le<std::uint32_t>(h + 12));
  out.shape.n2 = static_cast<int>(get_le<std::uint32_t>(h + 16));
  out.shape.n3 = static_cast<int>(get_le<std::uint32_t>(h + 20));
  if (h[24] > 2) throw Error("corrupt header: orientation " + std::to_string(h[24]));
  out.shape.orientation = Orientation::from_index(h[24]);
  if (h[25] > 1) throw Error("corrupt header: precision " + std::to_string(h[25]));
  out.precision = h[25] == 0 ? Precision::Single : Precision::Double;
  out.shape.dx = std::bit_cast<double>(get_le<std::uint64_t>(h + 32));
  out.time = std::bit_cast<double>(get_le<std::uint64_t>(h + 40));
  out.cycle = get_le<std::uint64_t>(h + 48);
  try {
    out.shape.validate();
  } catch (const Error& e) {
    throw Error(std::string("corrupt header: ") + e.what());
  }
  return out;
}

AnyState read_snapshot(std::istream& in, std::optional<GridShape> expected) {
  const SnapshotHeader h = read_snapshot_header(in);
  if (expected && (expected->n1 != h.shape.n1 || expected->n2 != h.shape.n2 ||
                   expected->n3 != h.shape.n3))
    throw Error("shape mismatch: file has " + std::to_string(h.shape.n1) + "x" +
                std::to_string(h.shape.n2) + "x" + std::to_string(h.shape.n3));
  if (h.precision == Precision::Single) return read_payload<float>(in, h);
  return read_payload<double>(in, h);
}

AnyState read_snapshot(const std::string& path, std::optional<GridShape> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_snapshot(in, expected);
}

template void write_snapshot<float>(const ConservedState<float>&, std::ostream&);
template void write_snapshot<double>(const ConservedState<double>&, std::ostream&);
template void write_snapshot<float>(const ConservedState<float>&, const std::string&);
template void write_snapshot<double>(const ConservedState<double>&, const std::string&);

}  // namespace mhd
