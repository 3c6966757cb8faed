#include "mhd/fluid.hpp"

#include <algorithm>
#include <cmath>

#include "mhd/errors.hpp"

namespace mhd::fluid {

template <class Real>
Real fast_speed(Real rho, Real p, Real b1, Real b2, Real b3, Real gamma) {
  if (!(rho > Real(0))) throw PositivityError("non-positive density", {-1, -1, -1});
  if (!(p >= Real(0))) throw PositivityError("negative pressure", {-1, -1, -1});
  const Real a2 = gamma * p / rho;
  const Real va2 = (b1 * b1 + b2 * b2 + b3 * b3) / rho;
  const Real sum = a2 + va2;
  const Real disc = std::max(Real(0), sum * sum - Real(4) * a2 * b1 * b1 / rho);
  return std::sqrt((sum + std::sqrt(disc)) / Real(2));
}

namespace {

// Scratch for one pencil; reused across the pencils of a slab.
//
// split() stores the physical flux F and the cell speed |v1| + c_f of every
// cell. Each interface then uses one freezing speed c* for all cells of its
// stencil, the largest cell speed among them, and builds the movers
// w± = (F ± c* u)/2 from that. With a common c* the movers of mass, momentum
// and energy stay proportional across a contact (so the scalar TVD bound
// carries over), and c* depends only on the stencil, so the flux stays local.
template <class Real>
struct Kernel {
  explicit Kernel(std::size_t n) : n(n) {
    for (auto* v : {&c, &bc1, &bc2, &bc3}) v->resize(n);
    for (int q = 0; q < kVars; ++q) {
      u[q].resize(n);
      ustar[q].resize(n);
      f[q].resize(n);
      flux[q].resize(n);
      flux_sum[q].resize(n);
    }
  }

  std::size_t n;
  std::array<std::vector<Real>, kVars> u, ustar, f, flux, flux_sum;
  std::vector<Real> c, bc1, bc2, bc3;
  // State the last split() saw.
  const std::array<std::vector<Real>, kVars>* state = nullptr;

  void split(const std::array<std::vector<Real>, kVars>& s, Real gamma, int j, int k) {
    const Real gm1 = gamma - Real(1);
    state = &s;
    for (std::size_t i = 0; i < n; ++i) {
      const Real rho = s[0][i];
      if (!(rho > Real(0)))
        throw PositivityError("non-positive density", {static_cast<int>(i), j, k});
      const Real v1 = s[1][i] / rho, v2 = s[2][i] / rho, v3 = s[3][i] / rho;
      const Real b1 = bc1[i], b2 = bc2[i], b3 = bc3[i];
      const Real p = gas_pressure(gm1, rho, s[1][i], s[2][i], s[3][i], s[4][i], b1, b2, b3);
      if (!(p >= Real(0))) throw PositivityError("negative pressure", {static_cast<int>(i), j, k});
      const Real ptot = p + (b1 * b1 + b2 * b2 + b3 * b3) / Real(2);
      c[i] = std::abs(v1) + fast_speed(rho, p, b1, b2, b3, gamma);
      f[0][i] = s[1][i];
      f[1][i] = s[1][i] * v1 + ptot - b1 * b1;
      f[2][i] = s[2][i] * v1 - b1 * b2;
      f[3][i] = s[3][i] * v1 - b1 * b3;
      f[4][i] = (s[4][i] + ptot) * v1 - b1 * (b1 * v1 + b2 * v2 + b3 * v3);
    }
  }

  void first_order_flux() {
    const auto& s = *state;
    const int nn = static_cast<int>(n);
    for (int i = 0; i < nn; ++i) {
      const int ip = wrap(i + 1, nn);
      const Real cs = std::max(c[i], c[ip]);
      for (int q = 0; q < kVars; ++q)
        flux[q][i] = (f[q][i] + cs * s[q][i]) / Real(2) + (f[q][ip] - cs * s[q][ip]) / Real(2);
    }
  }

  void second_order_flux(Limiter lim) {
    const auto& s = *state;
    const int nn = static_cast<int>(n);
    for (int i = 0; i < nn; ++i) {
      const int im = wrap(i - 1, nn), ip = wrap(i + 1, nn), ipp = wrap(i + 2, nn);
      const Real cs = std::max(std::max(c[im], c[i]), std::max(c[ip], c[ipp]));
      for (int q = 0; q < kVars; ++q) {
        const auto& fq = f[q];
        const auto& uq = s[q];
        const Real p_m = (fq[im] + cs * uq[im]) / Real(2), p_0 = (fq[i] + cs * uq[i]) / Real(2),
                   p_1 = (fq[ip] + cs * uq[ip]) / Real(2);
        const Real m_0 = (fq[i] - cs * uq[i]) / Real(2), m_1 = (fq[ip] - cs * uq[ip]) / Real(2),
                   m_2 = (fq[ipp] - cs * uq[ipp]) / Real(2);
        const Real right = p_0 + limit(lim, p_0 - p_m, p_1 - p_0) / Real(2);
        const Real left = m_1 - limit(lim, m_1 - m_0, m_2 - m_1) / Real(2);
        flux[q][i] = right + left;
      }
    }
  }

  void apply(const std::array<std::vector<Real>, kVars>& base,
             std::array<std::vector<Real>, kVars>& out, Real factor) const {
    apply(flux, base, out, factor);
  }

  void apply(const std::array<std::vector<Real>, kVars>& fl,
             const std::array<std::vector<Real>, kVars>& base,
             std::array<std::vector<Real>, kVars>& out, Real factor) const {
    for (int q = 0; q < kVars; ++q) {
      const auto& f = fl[q];
      out[q][0] = base[q][0] - factor * (f[0] - f[n - 1]);
      for (std::size_t i = 1; i < n; ++i) out[q][i] = base[q][i] - factor * (f[i] - f[i - 1]);
    }
  }
};

template <class Real>
void load_centred_b(const ConservedState<Real>& st, int j, int k, std::vector<Real>& bc1,
                    std::vector<Real>& bc2, std::vector<Real>& bc3) {
  const GridShape& s = st.shape;
  const std::size_t row = s.index(0, j, k);
  const std::size_t row_j = s.index(0, wrap(j + 1, s.n2), k);
  const std::size_t row_k = s.index(0, j, wrap(k + 1, s.n3));
  const std::size_t n = s.n1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + 1 == n) ? 0 : i + 1;
    bc1[i] = (st.b1[row + i] + st.b1[row + ip]) / Real(2);
    bc2[i] = (st.b2[row + i] + st.b2[row_j + i]) / Real(2);
    bc3[i] = (st.b3[row + i] + st.b3[row_k + i]) / Real(2);
  }
}

}  // namespace

template <class Real>
std::vector<Real> freeze_speed(const Pencil<Real>& pencil, Real gamma) {
  const std::size_t n = pencil.size();
  std::vector<Real> c(n);
  const Real gm1 = gamma - Real(1);
  for (std::size_t i = 0; i < n; ++i) {
    const Real rho = pencil.rho[i];
    if (!(rho > Real(0))) throw PositivityError("non-positive density", {static_cast<int>(i), 0, 0});
    const Real p = gas_pressure(gm1, rho, pencil.mom1[i], pencil.mom2[i], pencil.mom3[i],
                                pencil.energy[i], pencil.bc1[i], pencil.bc2[i], pencil.bc3[i]);
    if (!(p >= Real(0))) throw PositivityError("negative pressure", {static_cast<int>(i), 0, 0});
    c[i] = std::abs(pencil.mom1[i] / rho) +
           fast_speed(rho, p, pencil.bc1[i], pencil.bc2[i], pencil.bc3[i], gamma);
  }
  return c;
}

template <class Real>
InterfaceFlux<Real> relaxed_flux(const Pencil<Real>& pencil, std::span<const Real> c, Real gamma,
                                 FluxOrder order, Limiter limiter) {
  const std::size_t n = pencil.size();
  if (n < 4) throw Error("pencil shorter than the flux stencil");
  if (c.size() != n) throw Error("freezing speed size mismatch");
  Kernel<Real> ker(n);
  const std::span<const Real> fields[kVars] = {pencil.rho, pencil.mom1, pencil.mom2, pencil.mom3,
                                               pencil.energy};
  for (int q = 0; q < kVars; ++q) std::copy(fields[q].begin(), fields[q].end(), ker.u[q].begin());
  std::copy(pencil.bc1.begin(), pencil.bc1.end(), ker.bc1.begin());
  std::copy(pencil.bc2.begin(), pencil.bc2.end(), ker.bc2.begin());
  std::copy(pencil.bc3.begin(), pencil.bc3.end(), ker.bc3.begin());
  ker.split(ker.u, gamma, 0, 0);
  // The caller's cell speeds replace the derived ones.
  std::copy(c.begin(), c.end(), ker.c.begin());
  if (order == FluxOrder::First)
    ker.first_order_flux();
  else
    ker.second_order_flux(limiter);
  return ker.flux;
}

template <class Real>
double cfl_timestep(const ConservedState<Real>& state, const SchemeParams& params,
                    const parallel::Executor& exec) {
  const GridShape& s = state.shape;
  const Real gamma = static_cast<Real>(params.gamma);
  const Real gm1 = gamma - Real(1);
  const int slabs = std::min(exec.workers(), s.n3);
  std::vector<double> slab_max(slabs, 0.0);
  parallel::parallel_for(parallel::partition(s.n3, slabs), [&](std::size_t slab, parallel::Range r) {
    std::vector<Real> bc1(s.n1), bc2(s.n1), bc3(s.n1);
    Real local = 0;
    for (int k = r.begin; k < r.end; ++k) {
      for (int j = 0; j < s.n2; ++j) {
        load_centred_b(state, j, k, bc1, bc2, bc3);
        const std::size_t row = s.index(0, j, k);
        for (int i = 0; i < s.n1; ++i) {
          const std::size_t c = row + i;
          const Real rho = state.rho[c];
          if (!(rho > Real(0))) throw PositivityError("non-positive density", {i, j, k});
          const Real m[3] = {state.mom1[c], state.mom2[c], state.mom3[c]};
          const Real b[3] = {bc1[i], bc2[i], bc3[i]};
          const Real p = gas_pressure(gm1, rho, m[0], m[1], m[2], state.energy[c], b[0], b[1], b[2]);
          if (!(p >= Real(0))) throw PositivityError("negative pressure", {i, j, k});
          for (int a = 0; a < 3; ++a) {
            const Real speed = std::abs(m[a] / rho) +
                               fast_speed(rho, p, b[a], b[(a + 1) % 3], b[(a + 2) % 3], gamma);
            local = std::max(local, speed);
          }
        }
      }
    }
    slab_max[slab] = static_cast<double>(local);
  });
  double vmax = 0.0;
  for (double v : slab_max) vmax = std::max(vmax, v);
  if (!(vmax > 0.0)) throw Error("static state: dt unbounded");
  return params.courant * s.dx / vmax;
}

template <class Real>
void fluid_sweep(ConservedState<Real>& state, double dt, const SchemeParams& params,
                 const parallel::Executor& exec) {
  const GridShape& s = state.shape;
  const Real gamma = static_cast<Real>(params.gamma);
  const Real gm1 = gamma - Real(1);
  const Real half = static_cast<Real>(dt / (2.0 * s.dx));
  const Real full = static_cast<Real>(dt / s.dx);
  const std::size_t n = s.n1;
  std::vector<Real>* fields[kVars] = {&state.rho, &state.mom1, &state.mom2, &state.mom3,
                                      &state.energy};

  exec.for_range(s.n3, [&](std::size_t, parallel::Range r) {
    Kernel<Real> ker(n);
    for (int k = r.begin; k < r.end; ++k) {
      for (int j = 0; j < s.n2; ++j) {
        const std::size_t row = s.index(0, j, k);
        for (int q = 0; q < kVars; ++q)
          std::copy_n(fields[q]->data() + row, n, ker.u[q].begin());
        load_centred_b(state, j, k, ker.bc1, ker.bc2, ker.bc3);

        if (params.integrator == Integrator::HalfStep) {
          ker.split(ker.u, gamma, j, k);
          ker.first_order_flux();
          ker.apply(ker.u, ker.ustar, half);

          ker.split(ker.ustar, gamma, j, k);
          ker.second_order_flux(params.limiter);
          // ustar is no longer needed; reuse it for the result.
          ker.apply(ker.u, ker.ustar, full);
        } else {
          // Euler predictor, then u + dt/2 (L(u) + L(u1)) in flux form.
          ker.split(ker.u, gamma, j, k);
          ker.second_order_flux(params.limiter);
          ker.flux_sum = ker.flux;
          ker.apply(ker.u, ker.ustar, full);

          ker.split(ker.ustar, gamma, j, k);
          ker.second_order_flux(params.limiter);
          for (int q = 0; q < kVars; ++q)
            for (std::size_t i = 0; i < n; ++i) ker.flux_sum[q][i] += ker.flux[q][i];
          ker.apply(ker.flux_sum, ker.u, ker.ustar, half);
        }

        for (std::size_t i = 0; i < n; ++i) {
          const Real rho = ker.ustar[0][i];
          const Real p = gas_pressure(gm1, rho, ker.ustar[1][i], ker.ustar[2][i], ker.ustar[3][i],
                                      ker.ustar[4][i], ker.bc1[i], ker.bc2[i], ker.bc3[i]);
          if (!(rho > Real(0)) || !(p >= Real(0)))
            throw PositivityError("positivity lost in fluid update (CFL too aggressive?)",
                                  {static_cast<int>(i), j, k});
        }
        for (int q = 0; q < kVars; ++q)
          std::copy_n(ker.ustar[q].begin(), n, fields[q]->data() + row);
      }
    }
  });
}

#define MHD_INSTANTIATE_FLUID(Real)                                                              \
  template Real fast_speed<Real>(Real, Real, Real, Real, Real, Real);                            \
  template std::vector<Real> freeze_speed<Real>(const Pencil<Real>&, Real);                      \
  template InterfaceFlux<Real> relaxed_flux<Real>(const Pencil<Real>&, std::span<const Real>,    \
                                                  Real, FluxOrder, Limiter);                     \
  template double cfl_timestep<Real>(const ConservedState<Real>&, const SchemeParams&,           \
                                     const parallel::Executor&);                                 \
  template void fluid_sweep<Real>(ConservedState<Real>&, double, const SchemeParams&,            \
                                  const parallel::Executor&);

MHD_INSTANTIATE_FLUID(float)
MHD_INSTANTIATE_FLUID(double)

}  // namespace mhd::fluid
