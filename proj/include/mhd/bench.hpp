#pragma once

// Timing protocol: per box size and worker count, build the state, run
// `warmup` untimed cycles, then time `repetitions` cycles one by one. Only
// step_cycle is inside the timed region.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhd/grid.hpp"
#include "mhd/perf.hpp"

namespace mhd {

struct BenchOptions {
  std::vector<int> sizes{16, 32, 64, 128};
  std::vector<int> workers{1};
  int repetitions = 5;
  int warmup = 1;
  Precision precision = Precision::Single;
  SchemeParams params;
  /// Records for the derived block; empty skips it.
  std::vector<perf::MachineSpec> machines;
  std::string baseline_label = "x86(1)";
  std::string host_label = "host";
};

struct BenchRow {
  int size = 0;
  int workers = 1;
  perf::TimingStats stats;
  bool skipped = false;
  std::string reason;
};

struct DerivedRow {
  std::string label;
  double runtime_ms = 0.0;
  bool measured = false;  // true for the host row built from this run
  perf::Criteria criteria;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<DerivedRow> derived;
  /// Host record in machine-file format, when the host peaks are known and
  /// 128^3 was measured.
  std::optional<perf::MachineSpec> host_record;
};

/// Times one configuration. Throws std::bad_alloc if the box does not fit.
perf::TimingStats time_cycles(int size, int workers, const BenchOptions& opts);

BenchResult run_bench(const BenchOptions& opts,
                      const std::function<void(const BenchRow&)>& on_row = {});

/// Comparison-table rows for every machine with a reference runtime, plus the
/// host when both its peaks and a 128^3 timing are available.
std::vector<DerivedRow> derived_block(const BenchOptions& opts, const std::vector<BenchRow>& rows);

void write_bench_rows(const std::vector<BenchRow>& rows, std::ostream& out);
void write_derived(const std::vector<DerivedRow>& rows, std::ostream& out);

}  // namespace mhd
