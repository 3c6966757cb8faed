#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "mhd/bench.hpp"
#include "mhd/config.hpp"
#include "mhd/errors.hpp"
#include "mhd/init.hpp"
#include "mhd/slice.hpp"
#include "mhd/snapshot.hpp"

using namespace mhd;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mhd_test_" + name)).string();
}

}  // namespace

TEST_CASE("uniform initial condition") {
  SchemeParams params;
  InitParams ip;
  ip.rho = 2.0;
  ip.velocity = {0.5, 0.0, 0.0};
  const auto st = init_condition<double>(InitKind::Uniform, cube(8, 0.5), params, ip);
  const auto t = totals(st);
  const double volume = 8 * 8 * 8 * 0.125;
  CHECK(t.mass == doctest::Approx(2.0 * volume));
  CHECK(t.momentum[0] == doctest::Approx(1.0 * volume));
  CHECK(t.energy == doctest::Approx((1.0 / (params.gamma - 1) + 0.25) * volume));
}

TEST_CASE("solenoidal random and Orszag-Tang fields are divergence free") {
  SchemeParams params;
  for (auto kind : {InitKind::SolenoidalRandom, InitKind::OrszagTangXY, InitKind::BrioWuX}) {
    const auto st = init_condition<double>(kind, cube(16, 1.0 / 16), params);
    CAPTURE(init_kind_name(kind));
    CHECK(max_abs(discrete_divergence(st).values) * st.shape.dx / max_abs_b(st) <= 1e-13);
  }
  InitParams ip;
  ip.field_amplitude = 0.8;
  const auto st = init_condition<double>(InitKind::SolenoidalRandom, cube(16, 1.0 / 16), params, ip);
  CHECK(max_abs_b(st) == doctest::Approx(0.8));
}

TEST_CASE("Sod states") {
  SchemeParams params;
  params.gamma = 1.4;
  const auto st = init_condition<double>(InitKind::SodX, GridShape{16, 8, 8, 1.0 / 16}, params);
  const auto& s = st.shape;
  CHECK(st.rho[s.index(7, 3, 3)] == 1.0);
  CHECK(st.rho[s.index(8, 3, 3)] == 0.125);
  CHECK(st.energy[s.index(0, 0, 0)] == doctest::Approx(2.5));
  CHECK(st.energy[s.index(15, 0, 0)] == doctest::Approx(0.25));
  CHECK(st.mom1[s.index(3, 0, 0)] == 0.0);
}

TEST_CASE("init names round trip") {
  for (auto kind : {InitKind::Uniform, InitKind::AdvectPulse, InitKind::SodX, InitKind::BrioWuX,
                    InitKind::SolenoidalRandom, InitKind::OrszagTangXY})
    CHECK(parse_init_kind(init_kind_name(kind)) == kind);
  CHECK_THROWS_WITH_AS(parse_init_kind("blast"), doctest::Contains("unknown initial condition"), Error);
}

TEST_CASE("snapshot round trip preserves every bit") {
  SchemeParams params;
  auto st = init_condition<double>(InitKind::SolenoidalRandom, GridShape{8, 12, 16, 0.25}, params);
  st.time = 1.25;
  st.cycle = 42;
  st = transpose(st);
  std::stringstream buf;
  write_snapshot(st, buf);
  CHECK(buf.str().size() == kSnapshotHeaderBytes + 8 * st.shape.cells() * sizeof(double));
  CHECK(buf.str().compare(0, 8, std::string(kSnapshotMagic, 8)) == 0);
  const auto any = read_snapshot(buf);
  REQUIRE(std::holds_alternative<ConservedState<double>>(any));
  const auto& back = std::get<ConservedState<double>>(any);
  CHECK(back.shape == st.shape);
  CHECK(back.time == 1.25);
  CHECK(back.cycle == 42);
  CHECK(back.bitwise_equal(st));
}

TEST_CASE("single precision snapshot through a file") {
  SchemeParams params;
  const auto st = init_condition<float>(InitKind::OrszagTangXY, cube(8, 0.125), params);
  const std::string path = temp_path("single.snap");
  write_snapshot(st, path);
  const auto any = read_snapshot(path, st.shape);
  REQUIRE(std::holds_alternative<ConservedState<float>>(any));
  CHECK(std::get<ConservedState<float>>(any).bitwise_equal(st));
  CHECK_THROWS_WITH_AS(read_snapshot(path, cube(16)), doctest::Contains("shape mismatch"), Error);
  std::remove(path.c_str());
}

TEST_CASE("damaged snapshots are rejected") {
  SchemeParams params;
  const auto st = init_condition<double>(InitKind::Uniform, cube(8), params);
  std::stringstream buf;
  write_snapshot(st, buf);
  const std::string good = buf.str();
  auto read = [](const std::string& bytes) {
    std::istringstream in(bytes);
    return read_snapshot(in);
  };

  const std::size_t component = 8 * 8 * 8 * sizeof(double);
  CHECK_THROWS_WITH_AS(read(good.substr(0, kSnapshotHeaderBytes + 3 * component + 10)),
                       doctest::Contains("truncated payload at component 3"), Error);
  CHECK_THROWS_WITH_AS(read(good + "x"), doctest::Contains("trailing data"), Error);

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  CHECK_THROWS_WITH_AS(read(bad_magic), doctest::Contains("not a snapshot"), Error);

  std::string bad_version = good;
  bad_version[8] = 9;
  CHECK_THROWS_WITH_AS(read(bad_version), doctest::Contains("unsupported snapshot version 9"), Error);

  std::string bad_orientation = good;
  bad_orientation[24] = 5;
  CHECK_THROWS_WITH_AS(read(bad_orientation), doctest::Contains("orientation"), Error);

  CHECK_THROWS_WITH_AS(read(good.substr(0, 20)), doctest::Contains("truncated"), Error);
  CHECK_THROWS_AS(read_snapshot("/nonexistent/file.snap"), Error);
}

TEST_CASE("slice of a uniform state") {
  SchemeParams params;
  InitParams ip;
  ip.rho = 2.0;
  ip.pressure = 3.0;
  ip.field = {0.1, 0.2, 0.3};
  const auto st = init_condition<double>(InitKind::Uniform, GridShape{8, 12, 16, 1.0}, params, ip);
  std::ostringstream out;
  slice_export(st, SlicePlane{Axis::X, 5}, params.gamma, out);
  const auto rows = csv_rows(out.str());
  CHECK(rows[0] == std::vector<std::string>{"i", "j", "entropy", "by", "bz"});
  REQUIRE(rows.size() == 1 + 12 * 16);
  const double entropy = 3.0 / std::pow(2.0, params.gamma);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CHECK(std::stod(rows[r][2]) == doctest::Approx(entropy).epsilon(1e-13));
    CHECK(std::stod(rows[r][3]) == doctest::Approx(0.2));
    CHECK(std::stod(rows[r][4]) == doctest::Approx(0.3));
  }
  CHECK(rows[1][0] == "0");
  CHECK(rows[2][0] == "1");
  CHECK(rows[13][1] == "1");
}

TEST_CASE("Orszag-Tang slice entropy and field") {
  SchemeParams params;
  const int n = 16;
  auto st = init_condition<double>(InitKind::OrszagTangXY, cube(n, 1.0 / n), params);
  // Storage orientation must not change the exported plane.
  const auto turned = transpose(st);
  const double entropy =
      (5.0 / (12.0 * std::numbers::pi)) / std::pow(25.0 / (36.0 * std::numbers::pi), 5.0 / 3.0);
  const double b0 = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  std::ostringstream a, b;
  slice_export(st, SlicePlane{Axis::Z, 3}, params.gamma, a);
  slice_export(turned, SlicePlane{Axis::Z, 3}, params.gamma, b);
  CHECK(a.str() == b.str());
  const auto rows = csv_rows(a.str());
  CHECK(rows[0] == std::vector<std::string>{"i", "j", "entropy", "bx", "by"});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const int i = std::stoi(rows[r][0]), j = std::stoi(rows[r][1]);
    CHECK(std::stod(rows[r][2]) == doctest::Approx(entropy).epsilon(1e-12));
    const double yc = (j + 0.5) / n;
    CHECK(std::stod(rows[r][3]) == doctest::Approx(-b0 * std::sin(2 * std::numbers::pi * yc)));
    const double x0 = double(i) / n, x1 = double(i + 1) / n;
    // b2 is stored on y faces at x centres; the centred value averages two equal faces.
    const double xc = 0.5 * (x0 + x1);
    CHECK(std::stod(rows[r][4]) == doctest::Approx(b0 * std::sin(4 * std::numbers::pi * xc)));
  }
}

TEST_CASE("slice index out of range") {
  SchemeParams params;
  const auto st = init_condition<double>(InitKind::Uniform, cube(8), params);
  std::ostringstream out;
  CHECK_THROWS_WITH_AS(slice_export(st, SlicePlane{Axis::Y, 8}, params.gamma, out),
                       doctest::Contains("out of range [0, 8)"), Error);
  CHECK_THROWS_AS(slice_export(st, SlicePlane{Axis::Y, -1}, params.gamma, out), Error);
  CHECK(parse_axis("y") == Axis::Y);
  CHECK_THROWS_AS(parse_axis("w"), Error);
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# test run\n"
      "size = 16\n"
      "\n"
      "ic = sod_x   # comment\n"
      "gamma = 1.4\n"
      "integrator = half_step\n"
      "cycles = 3\n"
      "vx = 0.5\n"
      "output = out.snap\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.shape.n1 == 16);
  CHECK(cfg.shape.n3 == 16);
  CHECK(cfg.ic == InitKind::SodX);
  CHECK(cfg.params.gamma == 1.4);
  CHECK(cfg.params.integrator == Integrator::HalfStep);
  CHECK(cfg.cycles == 3u);
  CHECK(cfg.ic_params.velocity[0] == 0.5);
  CHECK(cfg.output == "out.snap");
  for (const auto& key : config_keys()) CHECK_FALSE(key.empty());
}

TEST_CASE("config errors name the line and key") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_config(in);
  };
  CHECK_THROWS_WITH_AS(parse("size = 16\ngamma = fast\n"), doctest::Contains("line 2: key 'gamma'"),
                       Error);
  CHECK_THROWS_WITH_AS(parse("colour = red\n"), doctest::Contains("line 1: unknown key 'colour'"), Error);
  CHECK_THROWS_WITH_AS(parse("size 16\n"), doctest::Contains("line 1: expected key = value"), Error);
  CHECK_THROWS_WITH_AS(parse("\n\nworkers = 0\n"), doctest::Contains("line 3: key 'workers'"), Error);
  CHECK_THROWS_WITH_AS(parse("integrator = euler\n"),
                       doctest::Contains("key 'integrator': unknown integrator 'euler'"), Error);
  CHECK_THROWS_WITH_AS(parse("ic = blast\n"), doctest::Contains("line 1: key 'ic'"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), Error);
}

TEST_CASE("bench gives one row per size and worker count") {
  BenchOptions opts;
  opts.sizes = {8, 16};
  opts.workers = {1, 2};
  opts.repetitions = 5;
  opts.warmup = 0;
  int seen = 0;
  const auto res = run_bench(opts, [&](const BenchRow&) { ++seen; });
  REQUIRE(res.rows.size() == 4);
  CHECK(seen == 4);
  CHECK(res.rows[0].size == 8);
  CHECK(res.rows[1].workers == 2);
  for (const auto& r : res.rows) {
    CHECK_FALSE(r.skipped);
    CHECK(r.stats.samples == 5);
    CHECK(r.stats.min_ms <= r.stats.median_ms);
  }
  CHECK(res.derived.empty());
  CHECK_FALSE(res.host_record.has_value());
  std::ostringstream out;
  write_bench_rows(res.rows, out);
  const auto rows = csv_rows(out.str());
  CHECK(rows[0] == std::vector<std::string>{"size", "median_ms", "min_ms", "workers"});
  CHECK(rows.size() == 5);

  opts.repetitions = 4;
  CHECK_THROWS_WITH_AS(run_bench(opts), doctest::Contains("at least 5"), Error);
  opts.repetitions = 5;
  opts.sizes = {10};
  CHECK_THROWS_AS(run_bench(opts), Error);
}

TEST_CASE("derived block from the bundled machines") {
  BenchOptions opts;
  opts.machines = perf::reference_machines();
  opts.machines.push_back({"host", 100.0, 20.0, std::nullopt, std::nullopt});
  BenchRow host;
  host.size = 128;
  host.stats.median_ms = 1000.0;
  const auto derived = derived_block(opts, {host});
  REQUIRE(derived.size() == 5);
  CHECK(derived[0].label == "x86(8)");
  CHECK(derived[0].criteria.code_speedup == doctest::Approx(8770.0 / 1315.0));
  CHECK(derived.back().label == "host");
  CHECK(derived.back().measured);
  CHECK(derived.back().criteria.code_speedup == doctest::Approx(8.77));
  CHECK(derived.back().criteria.fractional_speedup == doctest::Approx(8.77 * 17.0 / 100.0));
  std::ostringstream out;
  write_derived(derived, out);
  const auto rows = csv_rows(out.str());
  CHECK(rows[0].size() == 6);
  CHECK(rows.back()[0] == "host*");
  CHECK(rows.back()[2] == "8.8");
  // Without a 128^3 timing there is no host row.
  CHECK(derived_block(opts, {}).size() == 4);
}
