#include "mhd/magnetic.hpp"

#include "mhd/errors.hpp"
#include "mhd/fluid.hpp"

namespace mhd::magnetic {

std::array<std::vector<int>, 2> staggered_pencil_order(int n) {
  if (n <= 0 || n % 2 != 0) throw Error("pencil row count must be even and positive");
  std::array<std::vector<int>, 2> passes;
  for (int r = 1; r < n; r += 2) passes[0].push_back(r);
  for (int r = 0; r < n; r += 2) passes[1].push_back(r);
  return passes;
}

namespace {

template <class Real>
struct RowKernel {
  explicit RowKernel(std::size_t n) : n(static_cast<int>(n)), v(n), w(n), half(n), flux(n) {}

  int n;
  std::vector<Real> v, w, half, flux;

  void first_order(std::span<const Real> b) {
    for (int i = 0; i < n; ++i) w[i] = v[i] * b[i];
    for (int i = 0; i < n; ++i) {
      const int im = wrap(i - 1, n);
      const Real edge_v = (v[im] + v[i]) / Real(2);
      flux[i] = edge_v > Real(0) ? w[im] : w[i];
    }
  }

  void second_order(std::span<const Real> b, Limiter lim) {
    for (int i = 0; i < n; ++i) w[i] = v[i] * b[i];
    for (int i = 0; i < n; ++i) {
      const int im = wrap(i - 1, n), imm = wrap(i - 2, n), ip = wrap(i + 1, n);
      const Real edge_v = (v[im] + v[i]) / Real(2);
      if (edge_v > Real(0))
        flux[i] = w[im] + fluid::limit(lim, w[im] - w[imm], w[i] - w[im]) / Real(2);
      else
        flux[i] = w[i] - fluid::limit(lim, w[i] - w[im], w[ip] - w[i]) / Real(2);
    }
  }

  // Leaves the final edge flux (already multiplied by lambda) in `flux`.
  void run(std::span<const Real> b, Real lambda, Limiter lim) {
    first_order(b);
    const Real hl = lambda / Real(2);
    for (int i = 0; i < n; ++i) half[i] = b[i] - hl * (flux[wrap(i + 1, n)] - flux[i]);
    second_order(half, lim);
    for (int i = 0; i < n; ++i) flux[i] *= lambda;
  }
};

// Advects the transverse component `t` (1 or 2, 0-based storage axis) along
// axis 1. Rows along axis t are visited in odd/even passes; the other
// transverse axis is split across workers.
template <class Real>
void advect_component(ConservedState<Real>& st, int t, Real lambda, Limiter lim,
                      const parallel::Executor& exec) {
  const GridShape& s = st.shape;
  std::vector<Real>& bt = st.b(t);
  std::vector<Real>& bn = st.b1;
  const std::size_t n = s.n1;
  const auto passes = staggered_pencil_order(s.extent(t));

  auto pencil = [&](RowKernel<Real>& ker, int j, int k) {
    // Row below along axis t, used for the face velocity and the b1 update.
    const int jm = t == 1 ? wrap(j - 1, s.n2) : j;
    const int km = t == 2 ? wrap(k - 1, s.n3) : k;
    const std::size_t row = s.index(0, j, k);
    const std::size_t below = s.index(0, jm, km);
    for (std::size_t i = 0; i < n; ++i)
      ker.v[i] = (st.mom1[row + i] / st.rho[row + i] + st.mom1[below + i] / st.rho[below + i]) /
                 Real(2);
    std::span<Real> b_row(bt.data() + row, n);
    ker.run(std::span<const Real>(b_row), lambda, lim);
    const auto& f = ker.flux;
    for (std::size_t i = 0; i + 1 < n; ++i) b_row[i] -= f[i + 1] - f[i];
    b_row[n - 1] -= f[0] - f[n - 1];
    for (std::size_t i = 0; i < n; ++i) {
      bn[row + i] -= f[i];
      bn[below + i] += f[i];
    }
  };

  for (const auto& pass : passes) {
    if (t == 1) {
      exec.for_range(s.n3, [&](std::size_t, parallel::Range r) {
        RowKernel<Real> ker(n);
        for (int k = r.begin; k < r.end; ++k)
          for (int j : pass) pencil(ker, j, k);
      });
    } else {
      exec.for_range(static_cast<int>(pass.size()), [&](std::size_t, parallel::Range r) {
        RowKernel<Real> ker(n);
        for (int p = r.begin; p < r.end; ++p)
          for (int j = 0; j < s.n2; ++j) pencil(ker, j, pass[p]);
      });
    }
  }
}

}  // namespace

template <class Real>
std::vector<Real> advection_flux(std::span<const Real> b, std::span<const Real> v, Real lambda,
                                 Limiter limiter) {
  if (b.size() != v.size()) throw Error("velocity and field rows differ in length");
  if (b.size() < 4) throw Error("row shorter than the flux stencil");
  if (!(lambda > Real(0))) throw Error("lambda must be positive");
  RowKernel<Real> ker(b.size());
  std::copy(v.begin(), v.end(), ker.v.begin());
  ker.run(b, lambda, limiter);
  for (auto& f : ker.flux) f /= lambda;
  return ker.flux;
}

template <class Real>
void magnetic_sweep(ConservedState<Real>& state, double dt, const SchemeParams& params,
                    const parallel::Executor& exec) {
  const Real lambda = static_cast<Real>(dt / state.shape.dx);
  advect_component(state, 1, lambda, params.limiter, exec);
  advect_component(state, 2, lambda, params.limiter, exec);
}

#define MHD_INSTANTIATE_MAGNETIC(Real)                                                         \
  template std::vector<Real> advection_flux<Real>(std::span<const Real>, std::span<const Real>, \
                                                  Real, Limiter);                               \
  template void magnetic_sweep<Real>(ConservedState<Real>&, double, const SchemeParams&,        \
                                     const parallel::Executor&);

MHD_INSTANTIATE_MAGNETIC(float)
MHD_INSTANTIATE_MAGNETIC(double)

}  // namespace mhd::magnetic
