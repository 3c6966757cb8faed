#pragma once

// Exact solution of the 1D Euler Riemann problem for an ideal gas
// (Newton iteration on the star-region pressure, then self-similar
// sampling). Independent of the solver code; used only as an oracle.

namespace mhd::validation {

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

class ExactRiemann {
 public:
  ExactRiemann(PrimitiveState left, PrimitiveState right, double gamma);

  /// Solution at similarity coordinate s = (x - x0) / t.
  PrimitiveState sample(double s) const;

  double star_pressure() const { return p_star_; }
  double star_velocity() const { return u_star_; }

 private:
  double pressure_function(double p, const PrimitiveState& k, double a, double& derivative) const;

  PrimitiveState l_, r_;
  double gamma_;
  double al_, ar_;
  double p_star_ = 0.0, u_star_ = 0.0;
};

}  // namespace mhd::validation
