#include "mhd/stepper.hpp"

#include <algorithm>
#include <utility>

#include "mhd/errors.hpp"
#include "mhd/fluid.hpp"
#include "mhd/magnetic.hpp"
#include "mhd/timer.hpp"

namespace mhd {

template <class Real>
StepReport step_cycle(ConservedState<Real>& state, const SchemeParams& params,
                      const parallel::Executor& exec, std::optional<double> dt_cap) {
  if (!state.valid) throw Error("state was left invalid by an earlier failure");
  if (!state.shape.orientation.canonical()) throw Error("step_cycle needs canonical orientation");

  StepReport rep;
  perf::Stopwatch wall;
  ConservedState<Real> scratch;

  auto sweep = [&] {
    const Axis axis = state.shape.orientation.axis(0);
    perf::timed(rep.sections.fluid_ms, [&] { fluid::fluid_sweep(state, rep.dt, params, exec); });
    ++rep.census.fluid_sweeps;
    perf::timed(rep.sections.magnetic_ms,
                [&] { magnetic::magnetic_sweep(state, rep.dt, params, exec); });
    ++rep.census.magnetic_sweeps;
    rep.sweep_axes.push_back(axis);
  };
  auto turn = [&](TransposeDirection dir) {
    perf::timed(rep.sections.transpose_ms, [&] {
      transpose_into(state, scratch, dir, exec);
      std::swap(state, scratch);
    });
    ++rep.census.transposes;
  };

  try {
    rep.dt = perf::timed(rep.sections.cfl_ms, [&] { return fluid::cfl_timestep(state, params, exec); });
    ++rep.census.cfl;
    if (dt_cap) rep.dt = std::min(rep.dt, *dt_cap);
    if (!(rep.dt > 0.0)) throw Error("non-positive time step");

    sweep();  // X
    turn(TransposeDirection::Forward);
    sweep();  // Y
    turn(TransposeDirection::Forward);
    sweep();  // Z
    sweep();  // Z
    turn(TransposeDirection::Inverse);
    sweep();  // Y
    turn(TransposeDirection::Inverse);
    sweep();  // X
  } catch (...) {
    state.valid = false;
    throw;
  }

  state.time += 2.0 * rep.dt;
  ++state.cycle;
  rep.wall_ms = wall.elapsed_ms();
  return rep;
}

template <class Real>
std::vector<StepReport> run(ConservedState<Real>& state, const SchemeParams& params,
                            const RunLimits& limits, const parallel::Executor& exec,
                            const CycleHook& on_cycle) {
  if (!limits.cycles && !limits.t_end) throw Error("run needs a cycle count or an end time");
  std::vector<StepReport> reports;
  for (std::uint64_t n = 0;; ++n) {
    if (limits.cycles && n >= *limits.cycles) break;
    std::optional<double> cap;
    if (limits.t_end) {
      const double remaining = *limits.t_end - state.time;
      if (!(remaining > 0.0)) break;
      cap = remaining / 2.0;
    }
    reports.push_back(step_cycle(state, params, exec, cap));
    // Land exactly on t_end when the cap was the binding constraint.
    if (cap && reports.back().dt == *cap) state.time = *limits.t_end;
    if (on_cycle) on_cycle(reports.back());
  }
  return reports;
}

#define MHD_INSTANTIATE_STEPPER(Real)                                                           \
  template StepReport step_cycle<Real>(ConservedState<Real>&, const SchemeParams&,              \
                                       const parallel::Executor&, std::optional<double>);       \
  template std::vector<StepReport> run<Real>(ConservedState<Real>&, const SchemeParams&,        \
                                             const RunLimits&, const parallel::Executor&,    \
                                             const CycleHook&);

MHD_INSTANTIATE_STEPPER(float)
MHD_INSTANTIATE_STEPPER(double)

}  // namespace mhd
