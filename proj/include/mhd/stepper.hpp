#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mhd/grid.hpp"
#include "mhd/parallel.hpp"

namespace mhd {

struct StepCensus {
  int cfl = 0;
  int fluid_sweeps = 0;
  int magnetic_sweeps = 0;
  int transposes = 0;
  friend bool operator==(const StepCensus&, const StepCensus&) = default;
};

inline constexpr StepCensus kCanonicalCensus{1, 6, 6, 4};

struct SectionTimes {
  double cfl_ms = 0.0;
  double fluid_ms = 0.0;
  double magnetic_ms = 0.0;
  double transpose_ms = 0.0;
  double sum() const { return cfl_ms + fluid_ms + magnetic_ms + transpose_ms; }
};

struct StepReport {
  double dt = 0.0;
  double wall_ms = 0.0;
  SectionTimes sections;
  StepCensus census;
  /// Physical axes swept, in order.
  std::vector<Axis> sweep_axes;
};

/// One full cycle: CFL once, then sweeps X Y Z Z Y X with transposes between
/// axis changes. Advances time by 2*dt. `dt_cap` limits dt (used to land on
/// an end time). The state must be in canonical orientation; on failure it
/// is flagged invalid and the exception propagates.
template <class Real>
StepReport step_cycle(ConservedState<Real>& state, const SchemeParams& params,
                      const parallel::Executor& exec = parallel::Executor{},
                      std::optional<double> dt_cap = std::nullopt);

struct RunLimits {
  std::optional<std::uint64_t> cycles;
  /// Stop before the first cycle whose start time is >= t_end. The last
  /// cycle's dt is clamped so the run lands on t_end.
  std::optional<double> t_end;
};

/// Called after every cycle (the state is already at the cycle's end).
using CycleHook = std::function<void(const StepReport&)>;

template <class Real>
std::vector<StepReport> run(ConservedState<Real>& state, const SchemeParams& params,
                            const RunLimits& limits,
                            const parallel::Executor& exec = parallel::Executor{},
                            const CycleHook& on_cycle = {});

}  // namespace mhd
