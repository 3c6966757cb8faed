#pragma once

// Constrained-transport update of the face-centred field for one sweep along
// storage axis 1.
//
// The transverse components are advected along axis 1 with the face-averaged
// v1. The resulting edge flux is the EMF piece v1*b_t on the edge shared with
// the b1 faces; it is subtracted from the advected face row and applied with a
// plus sign to the b1 faces on one side of the edge and a minus sign on the
// other. Each piece is applied as soon as its pencil is done, so no EMF array
// exists. Because a pencil writes b1 on its own row and the row below, rows
// are processed in two passes (odd, then even) that never share a writer.

#include <array>
#include <span>
#include <vector>

#include "mhd/grid.hpp"
#include "mhd/parallel.hpp"

namespace mhd::magnetic {

/// Two passes over pencil rows [0, n): odd rows first, then even rows.
/// Throws for odd or non-positive n.
std::array<std::vector<int>, 2> staggered_pencil_order(int n);

/// Edge fluxes v*b for advecting one row of face values `b` with face
/// velocities `v` by lambda = dt/dx: flux[i] lives between cells i-1 and i.
/// Two-stage: first-order upwind half step, then limited full step.
template <class Real>
std::vector<Real> advection_flux(std::span<const Real> b, std::span<const Real> v, Real lambda,
                                 Limiter limiter = Limiter::VanLeer);

/// Advects b2 then b3 along axis 1, applying the matching constraint pieces
/// to b1. Fluid arrays are read-only here.
template <class Real>
void magnetic_sweep(ConservedState<Real>& state, double dt, const SchemeParams& params,
                    const parallel::Executor& exec = parallel::Executor{});

}  // namespace mhd::magnetic
