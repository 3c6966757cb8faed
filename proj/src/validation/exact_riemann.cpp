#include "mhd/validation/exact_riemann.hpp"

#include <cmath>
#include <stdexcept>

namespace mhd::validation {

ExactRiemann::ExactRiemann(PrimitiveState left, PrimitiveState right, double gamma)
    : l_(left), r_(right), gamma_(gamma) {
  al_ = std::sqrt(gamma_ * l_.p / l_.rho);
  ar_ = std::sqrt(gamma_ * r_.p / r_.rho);
  if (2.0 / (gamma_ - 1.0) * (al_ + ar_) <= r_.u - l_.u)
    throw std::domain_error("Riemann data generate vacuum");

  // Two-rarefaction guess, then Newton.
  const double z = (gamma_ - 1.0) / (2.0 * gamma_);
  double p = std::pow((al_ + ar_ - 0.5 * (gamma_ - 1.0) * (r_.u - l_.u)) /
                          (al_ / std::pow(l_.p, z) + ar_ / std::pow(r_.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-12);
  for (int it = 0; it < 100; ++it) {
    double dl = 0.0, dr = 0.0;
    const double fl = pressure_function(p, l_, al_, dl);
    const double fr = pressure_function(p, r_, ar_, dr);
    const double next = std::max(1e-14, p - (fl + fr + r_.u - l_.u) / (dl + dr));
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15) break;
  }
  double dl = 0.0, dr = 0.0;
  const double fl = pressure_function(p, l_, al_, dl);
  const double fr = pressure_function(p, r_, ar_, dr);
  p_star_ = p;
  u_star_ = 0.5 * (l_.u + r_.u) + 0.5 * (fr - fl);
}

double ExactRiemann::pressure_function(double p, const PrimitiveState& k, double a,
                                       double& derivative) const {
  const double g = gamma_;
  if (p > k.p) {
    const double A = 2.0 / ((g + 1.0) * k.rho);
    const double B = (g - 1.0) / (g + 1.0) * k.p;
    const double q = std::sqrt(A / (p + B));
    derivative = q * (1.0 - 0.5 * (p - k.p) / (p + B));
    return (p - k.p) * q;
  }
  const double ratio = p / k.p;
  derivative = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (k.rho * a);
  return 2.0 * a / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
}

PrimitiveState ExactRiemann::sample(double s) const {
  const double g = gamma_;
  const double gm = (g - 1.0) / (g + 1.0);
  if (s <= u_star_) {
    // Left of the contact.
    if (p_star_ > l_.p) {
      const double shock = l_.u - al_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / l_.p +
                                                  (g - 1.0) / (2.0 * g));
      if (s <= shock) return l_;
      const double ratio = p_star_ / l_.p;
      return {l_.rho * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_};
    }
    const double head = l_.u - al_;
    if (s <= head) return l_;
    const double a_star = al_ * std::pow(p_star_ / l_.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star_ - a_star;
    if (s >= tail) return {l_.rho * std::pow(p_star_ / l_.p, 1.0 / g), u_star_, p_star_};
    const double c = 2.0 / (g + 1.0) + gm / al_ * (l_.u - s);
    return {l_.rho * std::pow(c, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (al_ + 0.5 * (g - 1.0) * l_.u + s),
            l_.p * std::pow(c, 2.0 * g / (g - 1.0))};
  }
  // Right of the contact.
  if (p_star_ > r_.p) {
    const double shock = r_.u + ar_ * std::sqrt((g + 1.0) / (2.0 * g) * p_star_ / r_.p +
                                                (g - 1.0) / (2.0 * g));
    if (s >= shock) return r_;
    const double ratio = p_star_ / r_.p;
    return {r_.rho * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_};
  }
  const double head = r_.u + ar_;
  if (s >= head) return r_;
  const double a_star = ar_ * std::pow(p_star_ / r_.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star_ + a_star;
  if (s <= tail) return {r_.rho * std::pow(p_star_ / r_.p, 1.0 / g), u_star_, p_star_};
  const double c = 2.0 / (g + 1.0) - gm / ar_ * (r_.u - s);
  return {r_.rho * std::pow(c, 2.0 / (g - 1.0)),
          2.0 / (g + 1.0) * (-ar_ + 0.5 * (g - 1.0) * r_.u + s),
          r_.p * std::pow(c, 2.0 * g / (g - 1.0))};
}

}  // namespace mhd::validation
