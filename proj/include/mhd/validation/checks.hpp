#pragma once

// Invariant suites behind `validate` and the acceptance binary. Each suite
// returns measured numbers; CheckResult pairs one of them with its threshold.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mhd/grid.hpp"
#include "mhd/parallel.hpp"

namespace mhd::validation {

enum class Bound { AtMost, AtLeast, Within };

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::AtMost;
  bool pass = false;
  std::string note;
};

CheckResult at_most(std::string name, double value, double threshold, std::string note = {});
CheckResult at_least(std::string name, double value, double threshold, std::string note = {});
/// |value - target| <= tol; `threshold` stores tol.
CheckResult within(std::string name, double value, double target, double tol, std::string note = {});

/// "name value threshold PASS|FAIL [note]" with the comparison spelled out.
std::string format_check(const CheckResult& c);

struct LongRunResult {
  int cycles = 0;
  double mass_drift = 0.0;
  std::array<double, 3> momentum_drift{};
  double energy_drift = 0.0;
  /// max over cycles of max|div b| * dx / max|b|.
  double divergence_ratio = 0.0;
};

/// Solenoidal random field + smooth random fluid on an n^3 periodic box.
/// Drifts are |T - T0| / scale with scale = max(|T0|, sum |q| dx^3).
LongRunResult conservation_run(int n = 32, int cycles = 50,
                               const parallel::Executor& exec = parallel::Executor{});

/// Sod tube along x on (n, 8, 8) cells over [0, 2) with the jump at x = 1;
/// the periodic seam carries the mirrored problem. Returns the mean
/// absolute density error against the exact solution at t.
double sod_l1_error(int n = 512, double t = 0.15, Limiter limiter = Limiter::VanLeer,
                    const parallel::Executor& exec = parallel::Executor{});

struct ConvergenceResult {
  double coarse_error = 0.0;
  double fine_error = 0.0;
  double order = 0.0;
};

/// Mean absolute density error of a sine wave advected once across the box,
/// at n and 2n cells along x.
double sine_advection_error(int n, const parallel::Executor& exec = parallel::Executor{});
ConvergenceResult sine_convergence(int n = 64, const parallel::Executor& exec = parallel::Executor{});

struct TvdResult {
  double initial_tv = 0.0;
  /// Largest per-pencil increase of TV(rho) over any cycle.
  double max_increase = 0.0;
};

/// Square wave in density advected with uniform v and p, b = 0.
TvdResult advection_tvd(int n = 64, int cycles = 20, Limiter limiter = Limiter::VanLeer,
                        const parallel::Executor& exec = parallel::Executor{});

struct DeterminismResult {
  std::vector<int> workers;
  /// Index into `workers` of every run whose final state differs from the first.
  std::vector<int> mismatches;
};

DeterminismResult determinism_run(int n = 64, int cycles = 2,
                                  std::vector<int> workers = {1, 2, 4, 8});

/// Derived comparison rows recomputed from the bundled machine table.
std::vector<CheckResult> comparison_table_checks();
/// Per-cell census and 128^3 totals.
std::vector<CheckResult> counting_model_checks();

struct SuiteOptions {
  int workers = 1;
  /// Test hook: run the TVD property with a broken limiter.
  Limiter tvd_limiter = Limiter::VanLeer;
  /// Smaller grids for quick turnaround (checks keep their thresholds).
  bool quick = false;
};

std::vector<CheckResult> run_suite(const SuiteOptions& opts);

}  // namespace mhd::validation
