#include "mhd/init.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Mode {
  std::array<int, 3> k;
  double amplitude;
  double phase;
};

std::vector<Mode> random_modes(std::mt19937_64& rng, int count) {
  std::uniform_int_distribution<int> wave(-2, 2);
  std::uniform_real_distribution<double> amp(0.5, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<Mode> modes;
  while (static_cast<int>(modes.size()) < count) {
    Mode m{{wave(rng), wave(rng), wave(rng)}, 0.0, 0.0};
    if (m.k[0] == 0 && m.k[1] == 0 && m.k[2] == 0) continue;
    m.amplitude = amp(rng);
    m.phase = phase(rng);
    modes.push_back(m);
  }
  return modes;
}

double eval_modes(const std::vector<Mode>& modes, const std::array<double, 3>& x, bool scale_by_k) {
  double s = 0.0;
  for (const auto& m : modes) {
    const double arg = kTwoPi * (m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2]) + m.phase;
    const double knorm =
        std::sqrt(static_cast<double>(m.k[0] * m.k[0] + m.k[1] * m.k[1] + m.k[2] * m.k[2]));
    s += m.amplitude * (scale_by_k ? std::sin(arg) / (kTwoPi * knorm) : std::cos(arg));
  }
  return s;
}

// Smooth periodic scalar normalised to max |f| = 1 over the cell centres.
std::vector<double> smooth_scalar(const GridShape& s, std::mt19937_64& rng) {
  const auto modes = random_modes(rng, 4);
  std::vector<double> f(s.cells());
  double peak = 0.0;
  for (int k = 0; k < s.n3; ++k)
    for (int j = 0; j < s.n2; ++j)
      for (int i = 0; i < s.n1; ++i) {
        const double v =
            eval_modes(modes, {(i + 0.5) / s.n1, (j + 0.5) / s.n2, (k + 0.5) / s.n3}, false);
        f[s.index(i, j, k)] = v;
        peak = std::max(peak, std::abs(v));
      }
  if (peak > 0.0)
    for (auto& v : f) v /= peak;
  return f;
}

// Face field as the discrete curl of an edge-centred vector potential: the
// discrete divergence of the result cancels term by term.
template <class Real>
void curl_of_random_potential(ConservedState<Real>& st, std::mt19937_64& rng, double target_max) {
  const GridShape& s = st.shape;
  const double length = s.n1 * s.dx;
  std::array<std::vector<double>, 3> a;
  for (int m = 0; m < 3; ++m) {
    const auto modes = random_modes(rng, 6);
    a[m].resize(s.cells());
    for (int k = 0; k < s.n3; ++k)
      for (int j = 0; j < s.n2; ++j)
        for (int i = 0; i < s.n1; ++i) {
          // Edge m runs along axis m; it sits at the cell centre along m and
          // on the lower faces along the other two axes.
          std::array<double, 3> x{double(i) / s.n1, double(j) / s.n2, double(k) / s.n3};
          x[m] += 0.5 / s.extent(m);
          a[m][s.index(i, j, k)] = length * eval_modes(modes, x, true);
        }
  }

  auto build = [&](double scale) {
    const double inv = scale / s.dx;
    for (int k = 0; k < s.n3; ++k)
      for (int j = 0; j < s.n2; ++j)
        for (int i = 0; i < s.n1; ++i) {
          const std::size_t c = s.index(i, j, k);
          const std::size_t xp = s.index(wrap(i + 1, s.n1), j, k);
          const std::size_t yp = s.index(i, wrap(j + 1, s.n2), k);
          const std::size_t zp = s.index(i, j, wrap(k + 1, s.n3));
          st.b1[c] = static_cast<Real>(((a[2][yp] - a[2][c]) - (a[1][zp] - a[1][c])) * inv);
          st.b2[c] = static_cast<Real>(((a[0][zp] - a[0][c]) - (a[2][xp] - a[2][c])) * inv);
          st.b3[c] = static_cast<Real>(((a[1][xp] - a[1][c]) - (a[0][yp] - a[0][c])) * inv);
        }
  };
  build(1.0);
  const double peak = max_abs_b(st);
  if (peak > 0.0 && target_max > 0.0) {
    // Rescale the potential, not the field, so the curl stays exact.
    for (auto& comp : a)
      for (auto& v : comp) v *= target_max / peak;
    build(1.0);
  } else if (target_max == 0.0) {
    for (int m = 0; m < 3; ++m) std::fill(st.b(m).begin(), st.b(m).end(), Real(0));
  }
}

template <class Real>
void fill_faces_uniform(ConservedState<Real>& st, const std::array<double, 3>& b) {
  for (int m = 0; m < 3; ++m) std::fill(st.b(m).begin(), st.b(m).end(), static_cast<Real>(b[m]));
}

template <class Real>
void check_positive(const ConservedState<Real>& st, double gamma) {
  const auto bc = face_to_center(st);
  const Real gm1 = static_cast<Real>(gamma - 1.0);
  const GridShape& s = st.shape;
  for (int k = 0; k < s.n3; ++k)
    for (int j = 0; j < s.n2; ++j)
      for (int i = 0; i < s.n1; ++i) {
        const std::size_t c = s.index(i, j, k);
        if (!(st.rho[c] > Real(0))) throw PositivityError("initial density not positive", {i, j, k});
        const Real p = gas_pressure(gm1, st.rho[c], st.mom1[c], st.mom2[c], st.mom3[c], st.energy[c],
                                    bc[0].values[c], bc[1].values[c], bc[2].values[c]);
        if (!(p >= Real(0))) throw PositivityError("initial pressure negative", {i, j, k});
      }
}

}  // namespace

InitKind parse_init_kind(const std::string& name) {
  if (name == "uniform") return InitKind::Uniform;
  if (name == "advect_pulse") return InitKind::AdvectPulse;
  if (name == "sod_x") return InitKind::SodX;
  if (name == "brio_wu_x") return InitKind::BrioWuX;
  if (name == "solenoidal_random") return InitKind::SolenoidalRandom;
  if (name == "orszag_tang_xy") return InitKind::OrszagTangXY;
  throw Error("unknown initial condition '" + name + "'");
}

const char* init_kind_name(InitKind k) {
  switch (k) {
    case InitKind::Uniform: return "uniform";
    case InitKind::AdvectPulse: return "advect_pulse";
    case InitKind::SodX: return "sod_x";
    case InitKind::BrioWuX: return "brio_wu_x";
    case InitKind::SolenoidalRandom: return "solenoidal_random";
    case InitKind::OrszagTangXY: return "orszag_tang_xy";
  }
  return "?";
}

template <class Real>
void set_primitive(ConservedState<Real>& st, int i, int j, int k, double rho,
                   std::array<double, 3> v, double p, double gamma) {
  const GridShape& s = st.shape;
  const std::size_t c = s.index(i, j, k);
  const double bc1 = 0.5 * (double(st.b1[c]) + double(st.b1[s.index(wrap(i + 1, s.n1), j, k)]));
  const double bc2 = 0.5 * (double(st.b2[c]) + double(st.b2[s.index(i, wrap(j + 1, s.n2), k)]));
  const double bc3 = 0.5 * (double(st.b3[c]) + double(st.b3[s.index(i, j, wrap(k + 1, s.n3))]));
  st.rho[c] = static_cast<Real>(rho);
  st.mom1[c] = static_cast<Real>(rho * v[0]);
  st.mom2[c] = static_cast<Real>(rho * v[1]);
  st.mom3[c] = static_cast<Real>(rho * v[2]);
  const double e = p / (gamma - 1.0) + 0.5 * rho * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) +
                   0.5 * (bc1 * bc1 + bc2 * bc2 + bc3 * bc3);
  st.energy[c] = static_cast<Real>(e);
}

template <class Real>
ConservedState<Real> init_condition(InitKind kind, const GridShape& shape,
                                    const SchemeParams& params, const InitParams& ip) {
  auto st = allocate_state<Real>(shape, params);
  const double gamma = params.gamma;
  using Vec = std::array<double, 3>;

  switch (kind) {
    case InitKind::Uniform:
      fill_faces_uniform(st, ip.field);
      fill_primitives(st, gamma, [&](const Vec&, double& rho, Vec& v, double& p) {
        rho = ip.rho;
        v = ip.velocity;
        p = ip.pressure;
      });
      break;

    case InitKind::AdvectPulse:
      fill_faces_uniform(st, ip.field);
      fill_primitives(st, gamma, [&](const Vec& x, double& rho, Vec& v, double& p) {
        double shape_value;
        if (ip.profile == PulseProfile::Sine) {
          shape_value = std::sin(kTwoPi * x[0]);
        } else {
          // Nearest periodic image of the centre.
          double d = x[0] - ip.pulse_center;
          d -= std::round(d);
          shape_value = std::exp(-d * d / (2.0 * ip.pulse_width * ip.pulse_width));
        }
        rho = ip.rho + ip.amplitude * shape_value;
        v = {ip.pulse_speed, 0.0, 0.0};
        p = ip.pressure;
      });
      break;

    case InitKind::SodX:
      fill_primitives(st, gamma, [&](const Vec& x, double& rho, Vec& v, double& p) {
        const bool left = x[0] < 0.5;
        rho = left ? 1.0 : 0.125;
        p = left ? 1.0 : 0.1;
        v = {0.0, 0.0, 0.0};
      });
      break;

    case InitKind::BrioWuX: {
      for (int k = 0; k < shape.n3; ++k)
        for (int j = 0; j < shape.n2; ++j)
          for (int i = 0; i < shape.n1; ++i) {
            const std::size_t c = shape.index(i, j, k);
            st.b1[c] = static_cast<Real>(0.75);
            // b2 depends on x only, so it is divergence free on the y faces.
            st.b2[c] = static_cast<Real>((i + 0.5) / shape.n1 < 0.5 ? 1.0 : -1.0);
          }
      fill_primitives(st, gamma, [&](const Vec& x, double& rho, Vec& v, double& p) {
        const bool left = x[0] < 0.5;
        rho = left ? 1.0 : 0.125;
        p = left ? 1.0 : 0.1;
        v = {0.0, 0.0, 0.0};
      });
      break;
    }

    case InitKind::SolenoidalRandom: {
      std::mt19937_64 rng(ip.seed);
      curl_of_random_potential(st, rng, ip.field_amplitude);
      const auto drho = smooth_scalar(shape, rng);
      const auto dp = smooth_scalar(shape, rng);
      std::array<std::vector<double>, 3> dv;
      for (auto& f : dv) f = smooth_scalar(shape, rng);
      for (int k = 0; k < shape.n3; ++k)
        for (int j = 0; j < shape.n2; ++j)
          for (int i = 0; i < shape.n1; ++i) {
            const std::size_t c = shape.index(i, j, k);
            Vec v;
            for (int m = 0; m < 3; ++m) v[m] = ip.bulk_velocity[m] + ip.velocity_amplitude * dv[m][c];
            set_primitive(st, i, j, k, ip.rho * (1.0 + ip.density_contrast * drho[c]), v,
                          ip.pressure * (1.0 + ip.pressure_contrast * dp[c]), gamma);
          }
      break;
    }

    case InitKind::OrszagTangXY: {
      const double b0 = 1.0 / std::sqrt(4.0 * std::numbers::pi);
      for (int k = 0; k < shape.n3; ++k)
        for (int j = 0; j < shape.n2; ++j)
          for (int i = 0; i < shape.n1; ++i) {
            const std::size_t c = shape.index(i, j, k);
            const double xc = (i + 0.5) / shape.n1, yc = (j + 0.5) / shape.n2;
            // b1 varies only along y and b2 only along x: exactly solenoidal.
            st.b1[c] = static_cast<Real>(-b0 * std::sin(kTwoPi * yc));
            st.b2[c] = static_cast<Real>(b0 * std::sin(2.0 * kTwoPi * xc));
          }
      fill_primitives(st, gamma, [&](const Vec& x, double& rho, Vec& v, double& p) {
        rho = 25.0 / (36.0 * std::numbers::pi);
        p = 5.0 / (12.0 * std::numbers::pi);
        v = {-std::sin(kTwoPi * x[1]), std::sin(kTwoPi * x[0]), 0.0};
      });
      break;
    }
  }

  check_positive(st, gamma);
  return st;
}

#define MHD_INSTANTIATE_INIT(Real)                                                            \
  template ConservedState<Real> init_condition<Real>(InitKind, const GridShape&,              \
                                                     const SchemeParams&, const InitParams&); \
  template void set_primitive<Real>(ConservedState<Real>&, int, int, int, double,             \
                                    std::array<double, 3>, double, double);

MHD_INSTANTIATE_INIT(float)
MHD_INSTANTIATE_INIT(double)

}  // namespace mhd
