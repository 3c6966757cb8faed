#pragma once

// One-dimensional relaxing-TVD update of (rho, mom1..3, e) along storage
// axis 1 with the magnetic field held fixed.
//
// Each conserved variable u with flux F is split with a freezing speed c
// (the largest |v1| + c_f in the interface's stencil) into a right mover
// w+ = (F + c u)/2 and a left mover w- = (F - c u)/2, so F = w+ + w-. The interface flux takes w+ from the left
// cell and w- from the right cell, plus Van Leer limited half-slopes of the
// same movers for the second-order version. Time integration is selected by
// SchemeParams::integrator: the default strong-stability-preserving RK2
// averages two limited Euler stages; the half-step variant does a first-order
// half step and then a limited full step on the half-step state.

#include <array>
#include <span>
#include <vector>

#include "mhd/grid.hpp"
#include "mhd/parallel.hpp"

namespace mhd::fluid {

inline constexpr int kVars = 5;

/// Fast magnetosonic speed along axis 1, given cell-centred b. Throws
/// PositivityError (index {-1,-1,-1}) for rho <= 0 or p < 0.
template <class Real>
Real fast_speed(Real rho, Real p, Real b1, Real b2, Real b3, Real gamma);

/// Harmonic-mean Van Leer limiter: 2 dl dr / (dl + dr) when dl dr > 0, else 0.
template <class Real>
inline Real vanleer(Real dl, Real dr) {
  const Real prod = dl * dr;
  return prod > Real(0) ? Real(2) * prod / (dl + dr) : Real(0);
}

template <class Real>
inline Real limit(Limiter lim, Real dl, Real dr) {
  return lim == Limiter::VanLeer ? vanleer(dl, dr) : (dl + dr) / Real(2);
}

/// Views of one line of cells along the sweep axis.
template <class Real>
struct Pencil {
  std::span<const Real> rho, mom1, mom2, mom3, energy;
  std::span<const Real> bc1, bc2, bc3;
  std::size_t size() const { return rho.size(); }
};

enum class FluxOrder { First, Second };

/// Fluxes across the upper interface of every cell: flux[v][i] is the flux of
/// variable v through the face between cells i and i+1 (periodic).
template <class Real>
using InterfaceFlux = std::array<std::vector<Real>, kVars>;

/// Cell speeds |v1| + c_f. Throws PositivityError with the pencil index in
/// slot 0 when a cell is unphysical.
template <class Real>
std::vector<Real> freeze_speed(const Pencil<Real>& pencil, Real gamma);

/// Interface fluxes from cell speeds `c`. Every interface splits the cells of
/// its stencil (2 cells first order, 4 cells second order) with the largest c
/// among them.
template <class Real>
InterfaceFlux<Real> relaxed_flux(const Pencil<Real>& pencil, std::span<const Real> c, Real gamma,
                                 FluxOrder order, Limiter limiter = Limiter::VanLeer);

/// CFL step: courant * dx / max over cells and axes of (|v_a| + c_f,a).
template <class Real>
double cfl_timestep(const ConservedState<Real>& state, const SchemeParams& params,
                    const parallel::Executor& exec = parallel::Executor{});

/// Advances every pencil along storage axis 1 by dt. b is read-only.
template <class Real>
void fluid_sweep(ConservedState<Real>& state, double dt, const SchemeParams& params,
                 const parallel::Executor& exec = parallel::Executor{});

}  // namespace mhd::fluid
