#pragma once

// Operation and memory-traffic accounting for one time step, and the four
// cross-machine comparison metrics (code speed-up, fractional speed-up, FLOPS
// fraction, bandwidth fraction).
//
// The per-cell census gives 2366 flops and 187 reads + 98 writes per cell per
// step. The published 128^3 totals (4.62 G flop, 2.23 GB) are these census
// numbers expressed in binary giga units (2^30); the comparison metrics use
// the published totals as plain numbers against decimal peak rates, which is
// what reproduces the published comparison table.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhd/grid.hpp"

namespace mhd::perf {

inline constexpr double kBinaryGiga = 1073741824.0;  // 2^30
inline constexpr double kCanonicalCells = 128.0 * 128.0 * 128.0;

struct OpCountModel {
  std::int64_t add = 466;
  std::int64_t sub = 598;
  std::int64_t mul = 1174;
  std::int64_t div = 125;
  std::int64_t sqrt = 3;
  /// Published G flop per step for the 128^3 box.
  double canonical_step_gflop_128 = 4.62;

  /// Division and square root count as one flop each.
  std::int64_t flop_per_cell() const { return add + sub + mul + div + sqrt; }
};

struct TrafficModel {
  // Reals read / written per cell by one call of each function.
  int cfl_reads = 11;
  int fluid_reads = 10, fluid_writes = 5;
  int magnetic_reads = 14, magnetic_writes = 6;
  int transpose_reads = 8, transpose_writes = 8;
  // Calls per step.
  int cfl_calls = 1, fluid_calls = 6, magnetic_calls = 6, transpose_calls = 4;
  /// Published 128^3 single-precision traffic per step, in binary GB (2^30 bytes).
  double canonical_read_gb_128 = 1.46;
  double canonical_write_gb_128 = 0.77;
  double canonical_total_gb_128 = 2.23;

  int reads_per_cell() const {
    return cfl_calls * cfl_reads + fluid_calls * fluid_reads + magnetic_calls * magnetic_reads +
           transpose_calls * transpose_reads;
  }
  int writes_per_cell() const {
    return fluid_calls * fluid_writes + magnetic_calls * magnetic_writes +
           transpose_calls * transpose_writes;
  }
};

struct MachineSpec {
  std::string label;
  double peak_gflops = 0.0;
  double peak_gbps = 0.0;
  std::optional<double> watts;
  /// Time of one step on the 128^3 box, milliseconds.
  std::optional<double> reference_runtime_ms;

  void validate() const;
};

struct FlopCount {
  double model_flops = 0.0;
  /// Census flops in units of 2^30.
  double model_binary_gflop = 0.0;
  /// Published total scaled linearly to this box.
  double canonical_flops = 0.0;
  /// True when the box is 128^3, i.e. canonical_flops is the published value.
  bool canonical_exact = false;
};

FlopCount flops_per_step(const GridShape& shape, const OpCountModel& model = {});

struct ByteCount {
  double read_bytes = 0.0;
  double write_bytes = 0.0;
  double total_bytes() const { return read_bytes + write_bytes; }
  /// Published traffic scaled linearly to this box (binary GB, single precision).
  double canonical_read_gb = 0.0;
  double canonical_write_gb = 0.0;
  double canonical_total_gb = 0.0;
};

std::size_t bytes_per_real(Precision p);

ByteCount bytes_per_step(const GridShape& shape, Precision precision,
                         const TrafficModel& model = {});

struct Criteria {
  double code_speedup = 0.0;
  double fractional_speedup = 0.0;
  /// Fractions are plain ratios (0.074 means 7.4 %).
  double flops_fraction = 0.0;
  double bandwidth_fraction = 0.0;
  double achieved_gflops = 0.0;
  double achieved_gbps = 0.0;
};

/// Comparison metrics of one machine's step time against the baseline's
/// reference_runtime_ms. Throws if the baseline has no runtime or
/// runtime_ms <= 0.
Criteria criteria(double runtime_ms, const MachineSpec& machine, const MachineSpec& baseline,
                  const GridShape& shape, const OpCountModel& ops = {},
                  const TrafficModel& traffic = {});

/// Machine-spec text: one record per line, whitespace-separated key=value
/// pairs (label, peak_gflops, peak_gbps, watts, reference_runtime_ms_128).
/// '#' starts a comment. Errors name the line and key.
std::vector<MachineSpec> parse_machines(std::istream& in);
std::vector<MachineSpec> load_machines(const std::string& path);
std::string format_machine(const MachineSpec& m);
const MachineSpec& find_machine(const std::vector<MachineSpec>& ms, const std::string& label);

/// The comparison-table entries bundled with the project.
std::vector<MachineSpec> reference_machines();

struct TimingStats {
  double median_ms = 0.0;
  double min_ms = 0.0;
  std::size_t samples = 0;
};

TimingStats summarize(std::vector<double> samples_ms);

}  // namespace mhd::perf
