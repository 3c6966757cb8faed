#include <doctest.h>

#include <cmath>

#include "mhd/errors.hpp"
#include "mhd/init.hpp"
#include "mhd/stepper.hpp"

using namespace mhd;

TEST_CASE("one cycle has the canonical census and palindromic sweeps") {
  SchemeParams params;
  auto st = init_condition<double>(InitKind::SolenoidalRandom, cube(16, 1.0 / 16), params);
  const auto rep = step_cycle(st, params);
  CHECK(rep.census == kCanonicalCensus);
  CHECK(rep.census == StepCensus{1, 6, 6, 4});
  CHECK(rep.sweep_axes == std::vector<Axis>{Axis::X, Axis::Y, Axis::Z, Axis::Z, Axis::Y, Axis::X});
  CHECK(st.shape.orientation.canonical());
  CHECK(st.cycle == 1);
  CHECK(st.time == doctest::Approx(2 * rep.dt));
  CHECK(rep.dt > 0.0);
  CHECK(rep.sections.sum() <= rep.wall_ms + 1e-6);
}

TEST_CASE("static state is a bitwise fixed point") {
  SchemeParams params;
  InitParams ip;
  ip.pressure = 2.0;
  ip.field = {0.2, -0.1, 0.3};
  const auto start = init_condition<double>(InitKind::Uniform, cube(8), params, ip);
  auto st = start;
  const auto rep = step_cycle(st, params);
  CHECK(std::isfinite(rep.dt));
  CHECK(st.rho == start.rho);
  CHECK(st.energy == start.energy);
  CHECK(st.mom1 == start.mom1);
  CHECK(st.b2 == start.b2);
}

TEST_CASE("step needs canonical orientation") {
  SchemeParams params;
  auto st = init_condition<double>(InitKind::Uniform, cube(8), params);
  auto turned = transpose(st);
  CHECK_THROWS_WITH_AS(step_cycle(turned, params), doctest::Contains("canonical"), Error);
}

TEST_CASE("a failing step marks the state invalid") {
  SchemeParams params;
  auto st = init_condition<double>(InitKind::Uniform, cube(8), params);
  st.energy[st.shape.index(2, 2, 2)] = -5.0;
  CHECK_THROWS_AS(step_cycle(st, params), Error);
  CHECK_FALSE(st.valid);
  CHECK_THROWS_WITH_AS(step_cycle(st, params), doctest::Contains("invalid"), Error);
}

TEST_CASE("cycles do not depend on the worker count") {
  SchemeParams params;
  const auto start = init_condition<double>(InitKind::SolenoidalRandom, cube(16, 1.0 / 16), params);
  auto ref = start;
  run(ref, params, RunLimits{2, std::nullopt}, parallel::Executor(1));
  for (int w : {2, 3, 4, 8}) {
    auto st = start;
    run(st, params, RunLimits{2, std::nullopt}, parallel::Executor(w));
    CAPTURE(w);
    CHECK(st.bitwise_equal(ref));
  }
}

TEST_CASE("zero cycles leave the state alone") {
  SchemeParams params;
  const auto start = init_condition<double>(InitKind::SolenoidalRandom, cube(8, 1.0 / 8), params);
  auto st = start;
  const auto reps = run(st, params, RunLimits{0, std::nullopt});
  CHECK(reps.empty());
  CHECK(st.bitwise_equal(start));
  CHECK(st.cycle == 0);
}

TEST_CASE("run lands on the end time and calls the hook") {
  SchemeParams params;
  auto st = init_condition<double>(InitKind::SodX, GridShape{32, 8, 8, 1.0 / 32}, params);
  int calls = 0;
  double last_time = 0.0;
  const auto reps = run(st, params, RunLimits{std::nullopt, 0.1}, parallel::Executor{},
                        [&](const StepReport& r) {
                          ++calls;
                          CHECK(r.dt > 0.0);
                          CHECK(st.time > last_time);
                          last_time = st.time;
                        });
  CHECK(st.time == 0.1);
  CHECK(calls == static_cast<int>(reps.size()));
  CHECK(st.cycle == reps.size());
  CHECK(st.shape.orientation.canonical());
}

TEST_CASE("cycle limit wins over a distant end time") {
  SchemeParams params;
  auto st = init_condition<double>(InitKind::SodX, GridShape{32, 8, 8, 1.0 / 32}, params);
  const auto reps = run(st, params, RunLimits{3, 100.0});
  CHECK(reps.size() == 3);
  CHECK(st.time < 100.0);
}

TEST_CASE("single precision cycle runs") {
  SchemeParams params;
  params.precision = Precision::Single;
  auto st = init_condition<float>(InitKind::OrszagTangXY, cube(16, 1.0 / 16), params);
  const auto reps = run(st, params, RunLimits{2, std::nullopt});
  CHECK(reps.size() == 2);
  CHECK(st.valid);
}
