#include <doctest.h>

#include <sstream>

#include "mhd/errors.hpp"
#include "mhd/perf.hpp"
#include "mhd/timer.hpp"

using namespace mhd;
using namespace mhd::perf;

TEST_CASE("census totals") {
  const OpCountModel ops;
  const TrafficModel traffic;
  CHECK(ops.flop_per_cell() == 2366);
  CHECK(traffic.reads_per_cell() == 187);
  CHECK(traffic.writes_per_cell() == 98);
}

TEST_CASE("flops per step") {
  const auto big = flops_per_step(cube(128));
  CHECK(big.model_flops == doctest::Approx(4.962e9).epsilon(1e-3));
  CHECK(big.model_flops == 2366.0 * 2097152.0);
  CHECK(big.model_binary_gflop == doctest::Approx(4.621).epsilon(1e-3));
  CHECK(big.canonical_flops == doctest::Approx(4.62e9));
  CHECK(big.canonical_exact);
  const auto small = flops_per_step(cube(16));
  CHECK(small.model_flops == doctest::Approx(9.691e6).epsilon(1e-3));
  CHECK(small.canonical_flops == doctest::Approx(4.62e9 / 512));
  CHECK_FALSE(small.canonical_exact);
}

TEST_CASE("bytes per step") {
  CHECK(bytes_per_real(Precision::Single) == 4);
  CHECK(bytes_per_real(Precision::Double) == 8);
  const auto b = bytes_per_step(cube(128), Precision::Single);
  CHECK(b.read_bytes == doctest::Approx(1.5686e9).epsilon(1e-4));
  CHECK(b.write_bytes == doctest::Approx(0.8221e9).epsilon(1e-4));
  CHECK(b.read_bytes / kBinaryGiga == doctest::Approx(1.461).epsilon(1e-3));
  CHECK(b.write_bytes / kBinaryGiga == doctest::Approx(0.766).epsilon(1e-3));
  CHECK(b.canonical_read_gb == doctest::Approx(1.46));
  CHECK(b.canonical_write_gb == doctest::Approx(0.77));
  CHECK(b.canonical_total_gb == doctest::Approx(2.23));
  const auto d = bytes_per_step(cube(16), Precision::Double);
  CHECK(d.read_bytes == 187.0 * 8 * 4096);
  CHECK(d.write_bytes == 98.0 * 8 * 4096);
}

TEST_CASE("comparison criteria") {
  const auto ms = reference_machines();
  const auto& base = find_machine(ms, "x86(1)");
  const GridShape box = cube(128);

  const auto self = criteria(8770.0, base, base, box);
  CHECK(self.code_speedup == doctest::Approx(1.0));
  CHECK(self.fractional_speedup == doctest::Approx(1.0));
  CHECK(100 * self.flops_fraction == doctest::Approx(3.1).epsilon(0.02));
  CHECK(100 * self.bandwidth_fraction == doctest::Approx(1.3).epsilon(0.03));

  const auto& gpu = find_machine(ms, "N-GPU");
  const auto g = criteria(83.0, gpu, base, box);
  // Independent: 8770/83, then divided by the peak-flops ratio.
  CHECK(g.code_speedup == doctest::Approx(8770.0 / 83.0));
  CHECK(g.fractional_speedup == doctest::Approx((8770.0 / 83.0) / (748.8 / 17.0)));
  CHECK(g.achieved_gflops == doctest::Approx(4.62 / 0.083));
  CHECK(g.achieved_gbps == doctest::Approx(2.23 / 0.083));
  CHECK(100 * g.flops_fraction == doctest::Approx(7.4).epsilon(0.01));
  CHECK(100 * g.bandwidth_fraction == doctest::Approx(19.1).epsilon(0.01));

  const auto& cell = find_machine(ms, "Cell");
  const auto c = criteria(864.0, cell, base, box);
  CHECK(c.code_speedup == doctest::Approx(10.15).epsilon(1e-3));
  CHECK(c.fractional_speedup == doctest::Approx(0.42).epsilon(0.01));

  CHECK_THROWS_AS(criteria(0.0, gpu, base, box), Error);
  MachineSpec bare{"bare", 1.0, 1.0, std::nullopt, std::nullopt};
  CHECK_THROWS_WITH_AS(criteria(1.0, gpu, bare, box), doctest::Contains("no reference runtime"), Error);
}

TEST_CASE("machine records parse and round trip") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "label=a peak_gflops=10 peak_gbps=5 watts=100 reference_runtime_ms_128=42  # trailing\n"
      "label=b peak_gflops=2.5 peak_gbps=1\n");
  const auto ms = parse_machines(in);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].label == "a");
  CHECK(ms[0].watts == 100.0);
  CHECK(ms[0].reference_runtime_ms == 42.0);
  CHECK_FALSE(ms[1].reference_runtime_ms.has_value());
  std::istringstream again(format_machine(ms[0]) + "\n");
  const auto back = parse_machines(again);
  CHECK(back[0].peak_gflops == 10.0);
  CHECK(back[0].reference_runtime_ms == 42.0);
  CHECK_THROWS_WITH_AS(find_machine(ms, "z"), doctest::Contains("no machine labelled 'z'"), Error);
}

TEST_CASE("machine record errors name the line and key") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_machines(in);
  };
  CHECK_THROWS_WITH_AS(parse("label=a peak_gflops=x peak_gbps=1\n"),
                       doctest::Contains("line 1: key 'peak_gflops'"), Error);
  CHECK_THROWS_WITH_AS(parse("# c\nlabel=a peak_gflops=1 peak_gbps=1 colour=red\n"),
                       doctest::Contains("line 2: unknown key 'colour'"), Error);
  CHECK_THROWS_WITH_AS(parse("label=a peak_gflops\n"), doctest::Contains("line 1: expected key=value"),
                       Error);
  CHECK_THROWS_WITH_AS(parse("label=a peak_gflops=0 peak_gbps=1\n"),
                       doctest::Contains("peak_gflops must be positive"), Error);
  CHECK_THROWS_AS(load_machines("/nonexistent/machines.txt"), Error);
}

TEST_CASE("bundled machine file matches the built-in table") {
  const auto file = load_machines(MHD_DATA_DIR "/machines.txt");
  const auto builtin = reference_machines();
  REQUIRE(file.size() == builtin.size());
  for (std::size_t i = 0; i < file.size(); ++i) {
    CHECK(file[i].label == builtin[i].label);
    CHECK(file[i].peak_gflops == builtin[i].peak_gflops);
    CHECK(file[i].reference_runtime_ms == builtin[i].reference_runtime_ms);
  }
}

TEST_CASE("timing summary") {
  const auto s = summarize({5.0, 1.0, 3.0, 2.0, 4.0});
  CHECK(s.median_ms == 3.0);
  CHECK(s.min_ms == 1.0);
  CHECK(s.samples == 5);
  CHECK(summarize({4.0, 1.0, 2.0, 3.0}).median_ms == 2.5);
  CHECK(summarize({}).samples == 0);
}

TEST_CASE("stopwatch") {
  CHECK(time_ms([] {}) < 0.05);
  double acc = 0.0;
  const int v = timed(acc, [] { return 7; });
  CHECK(v == 7);
  CHECK(acc >= 0.0);
  Stopwatch sw;
  CHECK(sw.elapsed_ms() >= 0.0);
}
