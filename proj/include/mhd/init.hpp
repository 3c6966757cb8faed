#pragma once

// Initial conditions. Positions are fractional box coordinates in [0, 1) per
// physical axis (cell centres at (i + 1/2)/n), so fixtures do not depend on
// the cell width; dx only sets the physical scale.

#include <array>
#include <cstdint>
#include <string>

#include "mhd/grid.hpp"

namespace mhd {

enum class InitKind { Uniform, AdvectPulse, SodX, BrioWuX, SolenoidalRandom, OrszagTangXY };

InitKind parse_init_kind(const std::string& name);
const char* init_kind_name(InitKind k);

enum class PulseProfile { Gaussian, Sine };

struct InitParams {
  // uniform; also the background of advect_pulse.
  double rho = 1.0;
  double pressure = 1.0;
  std::array<double, 3> velocity{0.0, 0.0, 0.0};
  std::array<double, 3> field{0.0, 0.0, 0.0};

  // advect_pulse: density rho + amplitude * profile(x), moving with pulse_speed along x.
  PulseProfile profile = PulseProfile::Gaussian;
  double amplitude = 0.5;
  double pulse_center = 0.5;
  double pulse_width = 1.0 / 16.0;
  double pulse_speed = 1.0;

  // solenoidal_random
  std::uint64_t seed = 7;
  double field_amplitude = 0.5;  // max |b| after construction
  double density_contrast = 0.3;
  double pressure_contrast = 0.3;
  double velocity_amplitude = 0.2;
  std::array<double, 3> bulk_velocity{0.1, 0.05, -0.08};
};

/// Builds a canonical-orientation state. Throws on non-positive density or
/// pressure in the resulting state.
template <class Real>
ConservedState<Real> init_condition(InitKind kind, const GridShape& shape,
                                    const SchemeParams& params, const InitParams& ip = {});

/// Fills the fluid arrays of one cell from primitives, using the cell-centred
/// b implied by the face arrays already stored in `state`.
template <class Real>
void set_primitive(ConservedState<Real>& state, int i, int j, int k, double rho,
                   std::array<double, 3> v, double p, double gamma);

/// Sets all fluid cells from primitive callbacks of fractional position.
/// Faces must be set before calling.
template <class Real, class Fn>
void fill_primitives(ConservedState<Real>& state, double gamma, Fn&& prim) {
  const GridShape& s = state.shape;
  for (int k = 0; k < s.n3; ++k)
    for (int j = 0; j < s.n2; ++j)
      for (int i = 0; i < s.n1; ++i) {
        const std::array<double, 3> x{(i + 0.5) / s.n1, (j + 0.5) / s.n2, (k + 0.5) / s.n3};
        double rho = 1.0, p = 1.0;
        std::array<double, 3> v{0.0, 0.0, 0.0};
        prim(x, rho, v, p);
        set_primitive(state, i, j, k, rho, v, p, gamma);
      }
}

}  // namespace mhd
