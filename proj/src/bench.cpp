#include "mhd/bench.hpp"

#include <iomanip>
#include <new>
#include <ostream>

#include "mhd/errors.hpp"
#include "mhd/init.hpp"
#include "mhd/stepper.hpp"
#include "mhd/timer.hpp"

namespace mhd {

namespace {

template <class Real>
perf::TimingStats time_typed(int size, int workers, const BenchOptions& opts) {
  const parallel::Executor exec(workers);
  InitParams ip;
  ip.velocity = {0.5, 0.25, -0.125};
  ip.field = {0.1, 0.1, 0.1};
  auto st = init_condition<Real>(InitKind::Uniform, cube(size, 1.0 / size), opts.params, ip);
  for (int w = 0; w < opts.warmup; ++w) step_cycle(st, opts.params, exec);
  std::vector<double> samples;
  for (int r = 0; r < opts.repetitions; ++r)
    samples.push_back(perf::time_ms([&] { step_cycle(st, opts.params, exec); }));
  return perf::summarize(std::move(samples));
}

const BenchRow* find_row(const std::vector<BenchRow>& rows, int size) {
  // The fastest worker count stands for the machine.
  const BenchRow* best = nullptr;
  for (const auto& r : rows)
    if (r.size == size && !r.skipped && (!best || r.stats.median_ms < best->stats.median_ms))
      best = &r;
  return best;
}

}  // namespace

perf::TimingStats time_cycles(int size, int workers, const BenchOptions& opts) {
  return opts.precision == Precision::Single ? time_typed<float>(size, workers, opts)
                                             : time_typed<double>(size, workers, opts);
}

BenchResult run_bench(const BenchOptions& opts, const std::function<void(const BenchRow&)>& on_row) {
  if (opts.repetitions < 5) throw Error("bench needs at least 5 repetitions");
  BenchResult res;
  for (int size : opts.sizes) {
    cube(size).validate();
    for (int w : opts.workers) {
      BenchRow row;
      row.size = size;
      row.workers = w;
      try {
        row.stats = time_cycles(size, w, opts);
      } catch (const std::bad_alloc&) {
        row.skipped = true;
        row.reason = "insufficient memory";
      }
      if (on_row) on_row(row);
      res.rows.push_back(row);
    }
  }
  res.derived = derived_block(opts, res.rows);
  for (const auto& d : res.derived)
    if (d.measured) {
      auto m = perf::find_machine(opts.machines, opts.host_label);
      m.reference_runtime_ms = d.runtime_ms;
      res.host_record = m;
    }
  return res;
}

std::vector<DerivedRow> derived_block(const BenchOptions& opts, const std::vector<BenchRow>& rows) {
  std::vector<DerivedRow> out;
  if (opts.machines.empty()) return out;
  const auto& baseline = perf::find_machine(opts.machines, opts.baseline_label);
  const GridShape box = cube(128);
  for (const auto& m : opts.machines) {
    if (m.label == opts.baseline_label || m.label == opts.host_label || !m.reference_runtime_ms)
      continue;
    out.push_back({m.label, *m.reference_runtime_ms, false,
                   perf::criteria(*m.reference_runtime_ms, m, baseline, box)});
  }
  const BenchRow* host_row = find_row(rows, 128);
  for (const auto& m : opts.machines) {
    if (m.label != opts.host_label || !host_row) continue;
    out.push_back({m.label, host_row->stats.median_ms, true,
                   perf::criteria(host_row->stats.median_ms, m, baseline, box)});
  }
  return out;
}

void write_bench_rows(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "size,median_ms,min_ms,workers\n";
  out << std::fixed << std::setprecision(3);
  for (const auto& r : rows) {
    if (r.skipped) {
      out << r.size << ",skipped,skipped," << r.workers << "  # " << r.reason << '\n';
      continue;
    }
    out << r.size << ',' << r.stats.median_ms << ',' << r.stats.min_ms << ',' << r.workers << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_derived(const std::vector<DerivedRow>& rows, std::ostream& out) {
  out << "machine,runtime_ms,code_speedup,fractional_speedup,flops_pct,bandwidth_pct\n";
  out << std::fixed;
  for (const auto& d : rows) {
    out << d.label << (d.measured ? "*" : "") << ',' << std::setprecision(1) << d.runtime_ms << ','
        << d.criteria.code_speedup << ',' << std::setprecision(2) << d.criteria.fractional_speedup
        << ',' << std::setprecision(1) << 100.0 * d.criteria.flops_fraction << ','
        << 100.0 * d.criteria.bandwidth_fraction << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace mhd
