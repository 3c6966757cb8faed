#include "mhd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mhd/errors.hpp"

namespace mhd {

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

std::string Orientation::str() const {
  return std::string(axis_name(axis(0))) + axis_name(axis(1)) + axis_name(axis(2));
}

void GridShape::validate() const {
  for (int m = 0; m < 3; ++m) {
    const int n = extent(m);
    if (n < 8) throw Error("dimension " + std::to_string(n) + " smaller than 8");
    if (n % 4 != 0) throw Error("dimension not multiple of 4: " + std::to_string(n));
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw Error("cell width must be positive");
}

GridShape cube(int n, double dx) {
  GridShape s;
  s.n1 = s.n2 = s.n3 = n;
  s.dx = dx;
  return s;
}

const char* precision_name(Precision p) { return p == Precision::Single ? "single" : "double"; }

Precision parse_precision(const std::string& s) {
  if (s == "single" || s == "float" || s == "f32") return Precision::Single;
  if (s == "double" || s == "f64") return Precision::Double;
  throw Error("unknown precision '" + s + "'");
}

const char* integrator_name(Integrator i) {
  return i == Integrator::SspRk2 ? "ssp_rk2" : "half_step";
}

Integrator parse_integrator(const std::string& s) {
  if (s == "ssp_rk2") return Integrator::SspRk2;
  if (s == "half_step") return Integrator::HalfStep;
  throw Error("unknown integrator '" + s + "' (expected ssp_rk2 or half_step)");
}

void SchemeParams::validate() const {
  if (!(gamma > 1.0)) throw Error("gamma must exceed 1");
  if (!(courant > 0.0 && courant <= 1.0)) throw Error("courant must lie in (0, 1]");
}

template <class Real>
bool ConservedState<Real>::bitwise_equal(const ConservedState& other) const {
  if (!(shape == other.shape)) return false;
  const auto a = components();
  const auto b = other.components();
  for (std::size_t c = 0; c < kComponents; ++c) {
    if (a[c]->size() != b[c]->size()) return false;
    if (std::memcmp(a[c]->data(), b[c]->data(), a[c]->size() * sizeof(Real)) != 0) return false;
  }
  return true;
}

template <class Real>
ConservedState<Real> allocate_state(const GridShape& shape, const SchemeParams& params) {
  shape.validate();
  params.validate();
  ConservedState<Real> s;
  s.shape = shape;
  s.shape.orientation = Orientation{};
  for (auto* c : s.components()) c->assign(shape.cells(), Real(0));
  return s;
}

namespace {

template <class Real>
void forward_copy(const GridShape& in, const std::vector<Real>& src, std::vector<Real>& dst,
                  const parallel::Executor& exec, int tile) {
  const std::size_t n1 = in.n1, n2 = in.n2, n3 = in.n3;
  // dst(j, k, i) = src(i, j, k); dst has extents (n2, n3, n1).
  exec.for_range(in.n3, [&](std::size_t, parallel::Range r) {
    for (int k = r.begin; k < r.end; ++k) {
      for (int j0 = 0; j0 < in.n2; j0 += tile) {
        const int j1 = std::min(j0 + tile, in.n2);
        for (int i0 = 0; i0 < in.n1; i0 += tile) {
          const int i1 = std::min(i0 + tile, in.n1);
          for (int i = i0; i < i1; ++i) {
            Real* out = dst.data() + n2 * (k + n3 * static_cast<std::size_t>(i));
            const Real* col = src.data() + i + n1 * n2 * k;
            for (int j = j0; j < j1; ++j) out[j] = col[n1 * j];
          }
        }
      }
    }
  });
}

template <class Real>
void inverse_copy(const GridShape& in, const std::vector<Real>& src, std::vector<Real>& dst,
                  const parallel::Executor& exec, int tile) {
  const std::size_t n1 = in.n1, n2 = in.n2, n3 = in.n3;
  // dst(k, i, j) = src(i, j, k); dst has extents (n3, n1, n2).
  exec.for_range(in.n2, [&](std::size_t, parallel::Range r) {
    for (int j = r.begin; j < r.end; ++j) {
      for (int k0 = 0; k0 < in.n3; k0 += tile) {
        const int k1 = std::min(k0 + tile, in.n3);
        for (int i0 = 0; i0 < in.n1; i0 += tile) {
          const int i1 = std::min(i0 + tile, in.n1);
          for (int i = i0; i < i1; ++i) {
            Real* out = dst.data() + n3 * (i + n1 * static_cast<std::size_t>(j));
            const Real* col = src.data() + i + n1 * j;
            for (int k = k0; k < k1; ++k) out[k] = col[n1 * n2 * k];
          }
        }
      }
    }
  });
}

}  // namespace

template <class Real>
ConservedState<Real> transpose(const ConservedState<Real>& state, TransposeDirection dir,
                               const parallel::Executor& exec, int tile) {
  ConservedState<Real> out;
  transpose_into(state, out, dir, exec, tile);
  return out;
}

template <class Real>
void transpose_into(const ConservedState<Real>& state, ConservedState<Real>& out,
                    TransposeDirection dir, const parallel::Executor& exec, int tile) {
  if (tile < 1) throw Error("transpose tile must be positive");
  if (&state == &out) throw Error("transpose is out-of-place");
  const GridShape& in = state.shape;
  out.time = state.time;
  out.cycle = state.cycle;
  out.valid = state.valid;
  out.shape = in;
  const bool fwd = dir == TransposeDirection::Forward;
  if (fwd) {
    out.shape.n1 = in.n2;
    out.shape.n2 = in.n3;
    out.shape.n3 = in.n1;
    out.shape.orientation = in.orientation.next();
  } else {
    out.shape.n1 = in.n3;
    out.shape.n2 = in.n1;
    out.shape.n3 = in.n2;
    out.shape.orientation = in.orientation.prev();
  }

  // Vector components are relabelled along with the axes.
  const int from[3] = {fwd ? 1 : 2, fwd ? 2 : 0, fwd ? 0 : 1};
  auto move = [&](const std::vector<Real>& src, std::vector<Real>& dst) {
    dst.resize(src.size());
    if (fwd)
      forward_copy(in, src, dst, exec, tile);
    else
      inverse_copy(in, src, dst, exec, tile);
  };
  move(state.rho, out.rho);
  move(state.energy, out.energy);
  for (int m = 0; m < 3; ++m) {
    move(state.mom(from[m]), out.mom(m));
    move(state.b(from[m]), out.b(m));
  }
}

template <class Real>
std::array<CellField<Real>, 3> face_to_center(const ConservedState<Real>& state,
                                              const parallel::Executor& exec) {
  const GridShape& s = state.shape;
  std::array<CellField<Real>, 3> out;
  for (auto& f : out) {
    f.shape = s;
    f.values.resize(s.cells());
  }
  exec.for_range(s.n3, [&](std::size_t, parallel::Range r) {
    for (int k = r.begin; k < r.end; ++k) {
      const int kp = wrap(k + 1, s.n3);
      for (int j = 0; j < s.n2; ++j) {
        const int jp = wrap(j + 1, s.n2);
        for (int i = 0; i < s.n1; ++i) {
          const int ip = wrap(i + 1, s.n1);
          const std::size_t c = s.index(i, j, k);
          out[0].values[c] = (state.b1[c] + state.b1[s.index(ip, j, k)]) / Real(2);
          out[1].values[c] = (state.b2[c] + state.b2[s.index(i, jp, k)]) / Real(2);
          out[2].values[c] = (state.b3[c] + state.b3[s.index(i, j, kp)]) / Real(2);
        }
      }
    }
  });
  return out;
}

template <class Real>
CellField<Real> discrete_divergence(const ConservedState<Real>& state,
                                    const parallel::Executor& exec) {
  const GridShape& s = state.shape;
  CellField<Real> div{s, std::vector<Real>(s.cells())};
  const Real inv_dx = Real(1) / static_cast<Real>(s.dx);
  exec.for_range(s.n3, [&](std::size_t, parallel::Range r) {
    for (int k = r.begin; k < r.end; ++k) {
      const int kp = wrap(k + 1, s.n3);
      for (int j = 0; j < s.n2; ++j) {
        const int jp = wrap(j + 1, s.n2);
        for (int i = 0; i < s.n1; ++i) {
          const int ip = wrap(i + 1, s.n1);
          const std::size_t c = s.index(i, j, k);
          const Real d = (state.b1[s.index(ip, j, k)] - state.b1[c]) +
                         (state.b2[s.index(i, jp, k)] - state.b2[c]) +
                         (state.b3[s.index(i, j, kp)] - state.b3[c]);
          div.values[c] = d * inv_dx;
        }
      }
    }
  });
  return div;
}

template <class Real>
double max_abs(const std::vector<Real>& v) {
  double m = 0.0;
  for (Real x : v) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

template <class Real>
double max_abs_b(const ConservedState<Real>& state) {
  return std::max({max_abs(state.b1), max_abs(state.b2), max_abs(state.b3)});
}

template <class Real>
double canonical_sum(const GridShape& shape, const std::vector<Real>& field,
                     const parallel::Executor& exec) {
  const std::size_t storage_stride[3] = {1, static_cast<std::size_t>(shape.n1),
                                         static_cast<std::size_t>(shape.n1) * shape.n2};
  std::size_t stride[3];
  int extent[3];
  for (int a = 0; a < 3; ++a) {
    const int slot = shape.orientation.slot(static_cast<Axis>(a));
    stride[a] = storage_stride[slot];
    extent[a] = shape.extent(slot);
  }
  const std::size_t nx = extent[0], ny = extent[1];
  auto leaf = [&](std::size_t lo, std::size_t hi) {
    std::size_t x = lo % nx;
    std::size_t y = (lo / nx) % ny;
    std::size_t z = lo / (nx * ny);
    double acc = 0.0;
    for (std::size_t l = lo; l < hi; ++l) {
      acc += static_cast<double>(field[x * stride[0] + y * stride[1] + z * stride[2]]);
      if (++x == nx) {
        x = 0;
        if (++y == ny) {
          y = 0;
          ++z;
        }
      }
    }
    return acc;
  };
  return parallel::tree_reduce<double>(shape.cells(), leaf, exec);
}

template <class Real>
Totals totals(const ConservedState<Real>& state, const parallel::Executor& exec) {
  const GridShape& s = state.shape;
  const double vol = s.dx * s.dx * s.dx;
  Totals t;
  t.mass = canonical_sum(s, state.rho, exec) * vol;
  t.energy = canonical_sum(s, state.energy, exec) * vol;
  for (int m = 0; m < 3; ++m)
    t.momentum[static_cast<int>(s.orientation.axis(m))] = canonical_sum(s, state.mom(m), exec) * vol;
  return t;
}

#define MHD_INSTANTIATE_GRID(Real)                                                              \
  template struct ConservedState<Real>;                                                         \
  template ConservedState<Real> allocate_state<Real>(const GridShape&, const SchemeParams&);     \
  template ConservedState<Real> transpose<Real>(const ConservedState<Real>&, TransposeDirection, \
                                                const parallel::Executor&, int);                \
  template void transpose_into<Real>(const ConservedState<Real>&, ConservedState<Real>&,        \
                                     TransposeDirection, const parallel::Executor&, int);       \
  template std::array<CellField<Real>, 3> face_to_center<Real>(const ConservedState<Real>&,     \
                                                               const parallel::Executor&);      \
  template CellField<Real> discrete_divergence<Real>(const ConservedState<Real>&,               \
                                                     const parallel::Executor&);                \
  template double max_abs<Real>(const std::vector<Real>&);                                      \
  template double max_abs_b<Real>(const ConservedState<Real>&);                                 \
  template double canonical_sum<Real>(const GridShape&, const std::vector<Real>&,               \
                                      const parallel::Executor&);                               \
  template Totals totals<Real>(const ConservedState<Real>&, const parallel::Executor&);

MHD_INSTANTIATE_GRID(float)
MHD_INSTANTIATE_GRID(double)

}  // namespace mhd
