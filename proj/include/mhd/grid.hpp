#pragma once

// Simulation state: structure-of-arrays storage of the cell-centred fluid
// variables and the face-centred magnetic field on a periodic box.
//
// Storage is always (n1, n2, n3) with axis 1 fastest. Which physical axis
// sits on axis 1 is tracked by Orientation and changes with every transpose.
// Component arrays follow the storage axes: mom1/b1 always belong to the
// current fastest axis. b_m(i,j,k) lives on the lower face of cell (i,j,k)
// along storage axis m.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mhd/parallel.hpp"

namespace mhd {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

const char* axis_name(Axis a);

/// One of the three cyclic orderings of (X, Y, Z) along storage axes 1..3.
class Orientation {
 public:
  constexpr Orientation() = default;
  static constexpr Orientation from_index(int rot) { return Orientation(((rot % 3) + 3) % 3); }

  /// Physical axis stored along storage axis m (0-based).
  constexpr Axis axis(int m) const { return static_cast<Axis>((m + rot_) % 3); }
  /// Storage axis (0-based) holding physical axis a.
  constexpr int slot(Axis a) const { return (static_cast<int>(a) - rot_ + 3) % 3; }
  constexpr int index() const { return rot_; }

  constexpr Orientation next() const { return Orientation((rot_ + 1) % 3); }
  constexpr Orientation prev() const { return Orientation((rot_ + 2) % 3); }
  constexpr bool canonical() const { return rot_ == 0; }

  std::string str() const;

  friend constexpr bool operator==(Orientation, Orientation) = default;

 private:
  constexpr explicit Orientation(int rot) : rot_(rot) {}
  int rot_ = 0;
};

struct GridShape {
  int n1 = 16;
  int n2 = 16;
  int n3 = 16;
  double dx = 1.0;
  Orientation orientation{};

  std::size_t cells() const {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
           static_cast<std::size_t>(n3);
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n1) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(n2) * static_cast<std::size_t>(k));
  }
  int extent(int m) const { return m == 0 ? n1 : (m == 1 ? n2 : n3); }
  /// Extent along a physical axis.
  int physical_extent(Axis a) const { return extent(orientation.slot(a)); }

  /// Throws mhd::Error unless every side is >= 8 and a multiple of 4 and dx > 0.
  void validate() const;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

GridShape cube(int n, double dx = 1.0);

enum class Precision : std::uint8_t { Single = 0, Double = 1 };

const char* precision_name(Precision p);
Precision parse_precision(const std::string& s);

/// Slope limiter used by the TVD corrections. VanLeer is the scheme; Central
/// (unlimited arithmetic mean) exists so validation can show that the TVD
/// check catches a broken limiter.
enum class Limiter : std::uint8_t { VanLeer, Central };

/// Time integration of the fluid sweep. SspRk2 (two limited Euler stages,
/// averaged) keeps the scheme TVD for the two-mover split; HalfStep (first
/// order half step, limited full step) is cheaper but lets the total
/// variation grow slightly at contacts.
enum class Integrator : std::uint8_t { SspRk2, HalfStep };

const char* integrator_name(Integrator i);
Integrator parse_integrator(const std::string& s);

struct SchemeParams {
  double gamma = 5.0 / 3.0;
  double courant = 0.9;
  Precision precision = Precision::Double;
  Limiter limiter = Limiter::VanLeer;
  Integrator integrator = Integrator::SspRk2;

  void validate() const;
};

template <class Real>
struct ConservedState {
  using value_type = Real;
  static constexpr std::size_t kComponents = 8;

  GridShape shape;
  std::vector<Real> rho, mom1, mom2, mom3, energy, b1, b2, b3;
  double time = 0.0;
  std::uint64_t cycle = 0;
  /// Cleared when a step fails part-way; the arrays are then unspecified.
  bool valid = true;

  /// Fixed component order: rho, mom1..3, e, b1..3.
  std::array<std::vector<Real>*, kComponents> components() {
    return {&rho, &mom1, &mom2, &mom3, &energy, &b1, &b2, &b3};
  }
  std::array<const std::vector<Real>*, kComponents> components() const {
    return {&rho, &mom1, &mom2, &mom3, &energy, &b1, &b2, &b3};
  }
  std::vector<Real>& mom(int m) { return m == 0 ? mom1 : (m == 1 ? mom2 : mom3); }
  const std::vector<Real>& mom(int m) const { return m == 0 ? mom1 : (m == 1 ? mom2 : mom3); }
  std::vector<Real>& b(int m) { return m == 0 ? b1 : (m == 1 ? b2 : b3); }
  const std::vector<Real>& b(int m) const { return m == 0 ? b1 : (m == 1 ? b2 : b3); }

  bool bitwise_equal(const ConservedState& other) const;
};

template <class Real>
ConservedState<Real> allocate_state(const GridShape& shape, const SchemeParams& params);

enum class TransposeDirection { Forward, Inverse };

inline constexpr int kDefaultTransposeTile = 8;

/// Out-of-place tiled cyclic transpose. Forward makes the old middle axis the
/// fastest one, Inverse undoes a forward transpose. Three forward transposes
/// are the identity.
template <class Real>
ConservedState<Real> transpose(const ConservedState<Real>& state,
                               TransposeDirection dir = TransposeDirection::Forward,
                               const parallel::Executor& exec = parallel::Executor{},
                               int tile = kDefaultTransposeTile);

/// Same as transpose() but writes into `out`, reusing its buffers.
template <class Real>
void transpose_into(const ConservedState<Real>& state, ConservedState<Real>& out,
                    TransposeDirection dir = TransposeDirection::Forward,
                    const parallel::Executor& exec = parallel::Executor{},
                    int tile = kDefaultTransposeTile);

template <class Real>
struct CellField {
  GridShape shape;
  std::vector<Real> values;
};

/// Cell-centred b: average of the two faces bounding each cell.
template <class Real>
std::array<CellField<Real>, 3> face_to_center(const ConservedState<Real>& state,
                                              const parallel::Executor& exec = parallel::Executor{});

template <class Real>
CellField<Real> discrete_divergence(const ConservedState<Real>& state,
                                    const parallel::Executor& exec = parallel::Executor{});

template <class Real>
double max_abs(const std::vector<Real>& v);

/// Largest |face value| over all three b components.
template <class Real>
double max_abs_b(const ConservedState<Real>& state);

struct Totals {
  double mass = 0.0;
  /// Physical (X, Y, Z) order regardless of orientation.
  std::array<double, 3> momentum{};
  double energy = 0.0;
};

/// Integrals over the box. Summation runs over canonical (x fastest) cell
/// order through the fixed pairwise tree, so the result does not depend on
/// orientation or worker count.
template <class Real>
Totals totals(const ConservedState<Real>& state,
              const parallel::Executor& exec = parallel::Executor{});

/// Sum over canonical cell order of one component; exposed for diagnostics.
template <class Real>
double canonical_sum(const GridShape& shape, const std::vector<Real>& field,
                     const parallel::Executor& exec = parallel::Executor{});

/// Gas pressure from conserved variables and cell-centred b.
template <class Real>
inline Real gas_pressure(Real gamma_minus_one, Real rho, Real m1, Real m2, Real m3, Real e,
                         Real bc1, Real bc2, Real bc3) {
  const Real kinetic = (m1 * m1 + m2 * m2 + m3 * m3) / (Real(2) * rho);
  const Real magnetic = (bc1 * bc1 + bc2 * bc2 + bc3 * bc3) / Real(2);
  return gamma_minus_one * (e - kinetic - magnetic);
}

/// Positive remainder for periodic wrap.
inline int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace mhd
