#include "mhd/validation/checks.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "mhd/init.hpp"
#include "mhd/perf.hpp"
#include "mhd/stepper.hpp"
#include "mhd/validation/exact_riemann.hpp"

namespace mhd::validation {

namespace {

CheckResult make(std::string name, double value, double threshold, Bound bound, bool pass,
                 std::string note) {
  return {std::move(name), value, threshold, bound, pass, std::move(note)};
}

double drift(double now, double start, double scale) {
  return scale > 0.0 ? std::abs(now - start) / scale : std::abs(now - start);
}

double abs_integral(const GridShape& s, const std::vector<double>& v) {
  double sum = 0.0;
  for (double q : v) sum += std::abs(q);
  return sum * s.dx * s.dx * s.dx;
}

double divergence_ratio(const ConservedState<double>& st, const parallel::Executor& exec) {
  const double bmax = max_abs_b(st);
  if (bmax == 0.0) return 0.0;
  return max_abs(discrete_divergence(st, exec).values) * st.shape.dx / bmax;
}

}  // namespace

CheckResult at_most(std::string name, double value, double threshold, std::string note) {
  return make(std::move(name), value, threshold, Bound::AtMost, value <= threshold, std::move(note));
}

CheckResult at_least(std::string name, double value, double threshold, std::string note) {
  return make(std::move(name), value, threshold, Bound::AtLeast, value >= threshold,
              std::move(note));
}

CheckResult within(std::string name, double value, double target, double tol, std::string note) {
  auto c = make(std::move(name), value, tol, Bound::Within, std::abs(value - target) <= tol,
                std::move(note));
  std::ostringstream os;
  os << "target " << target;
  c.note = c.note.empty() ? os.str() : os.str() + "; " + c.note;
  return c;
}

std::string format_check(const CheckResult& c) {
  std::ostringstream os;
  os << std::setprecision(6) << c.name << ' ' << c.value << ' ';
  switch (c.bound) {
    case Bound::AtMost: os << "<="; break;
    case Bound::AtLeast: os << ">="; break;
    case Bound::Within: os << "+-"; break;
  }
  os << c.threshold << ' ' << (c.pass ? "PASS" : "FAIL");
  if (!c.note.empty()) os << " (" << c.note << ')';
  return os.str();
}

LongRunResult conservation_run(int n, int cycles, const parallel::Executor& exec) {
  SchemeParams params;
  const GridShape shape = cube(n, 1.0 / n);
  auto st = init_condition<double>(InitKind::SolenoidalRandom, shape, params);

  const Totals t0 = totals(st, exec);
  const double mass_scale = std::max(std::abs(t0.mass), abs_integral(shape, st.rho));
  const double energy_scale = std::max(std::abs(t0.energy), abs_integral(shape, st.energy));
  std::array<double, 3> mom_scale{};
  for (int m = 0; m < 3; ++m)
    mom_scale[m] = std::max(std::abs(t0.momentum[m]), abs_integral(shape, st.mom(m)));

  LongRunResult r;
  r.divergence_ratio = divergence_ratio(st, exec);
  for (int c = 0; c < cycles; ++c) {
    step_cycle(st, params, exec);
    const Totals t = totals(st, exec);
    r.mass_drift = std::max(r.mass_drift, drift(t.mass, t0.mass, mass_scale));
    r.energy_drift = std::max(r.energy_drift, drift(t.energy, t0.energy, energy_scale));
    for (int m = 0; m < 3; ++m)
      r.momentum_drift[m] =
          std::max(r.momentum_drift[m], drift(t.momentum[m], t0.momentum[m], mom_scale[m]));
    r.divergence_ratio = std::max(r.divergence_ratio, divergence_ratio(st, exec));
    ++r.cycles;
  }
  return r;
}

double sod_l1_error(int n, double t, Limiter limiter, const parallel::Executor& exec) {
  SchemeParams params;
  params.gamma = 1.4;
  params.limiter = limiter;
  const double length = 2.0;
  const GridShape shape{n, 8, 8, length / n, {}};
  auto st = init_condition<double>(InitKind::SodX, shape, params);
  run(st, params, RunLimits{std::nullopt, t}, exec);

  const PrimitiveState high{1.0, 0.0, 1.0}, low{0.125, 0.0, 0.1};
  const ExactRiemann centre(high, low, params.gamma);
  const ExactRiemann seam(low, high, params.gamma);
  double err = 0.0;
  for (int k = 0; k < shape.n3; ++k)
    for (int j = 0; j < shape.n2; ++j)
      for (int i = 0; i < shape.n1; ++i) {
        const double x = (i + 0.5) * shape.dx;
        double exact;
        if (x >= 0.5 * length - 0.5 && x < 0.5 * length + 0.5) {
          exact = centre.sample((x - 0.5 * length) / st.time).rho;
        } else {
          const double d = x < 0.5 * length ? x : x - length;
          exact = seam.sample(d / st.time).rho;
        }
        err += std::abs(st.rho[shape.index(i, j, k)] - exact);
      }
  return err / static_cast<double>(shape.cells());
}

double sine_advection_error(int n, const parallel::Executor& exec) {
  SchemeParams params;
  const GridShape shape{n, 8, 8, 1.0 / n, {}};
  InitParams ip;
  ip.profile = PulseProfile::Sine;
  ip.amplitude = 0.2;
  ip.pulse_speed = 1.0;
  auto st = init_condition<double>(InitKind::AdvectPulse, shape, params, ip);
  const double t_end = 1.0;
  run(st, params, RunLimits{std::nullopt, t_end}, exec);

  double err = 0.0;
  for (int k = 0; k < shape.n3; ++k)
    for (int j = 0; j < shape.n2; ++j)
      for (int i = 0; i < shape.n1; ++i) {
        const double x = (i + 0.5) / n - ip.pulse_speed * st.time;
        const double exact = ip.rho + ip.amplitude * std::sin(2.0 * std::numbers::pi * x);
        err += std::abs(st.rho[shape.index(i, j, k)] - exact);
      }
  return err / static_cast<double>(shape.cells());
}

ConvergenceResult sine_convergence(int n, const parallel::Executor& exec) {
  ConvergenceResult r;
  r.coarse_error = sine_advection_error(n, exec);
  r.fine_error = sine_advection_error(2 * n, exec);
  r.order = std::log2(r.coarse_error / r.fine_error);
  return r;
}

TvdResult advection_tvd(int n, int cycles, Limiter limiter, const parallel::Executor& exec) {
  SchemeParams params;
  params.limiter = limiter;
  const GridShape shape{n, 8, 8, 1.0 / n, {}};
  auto st = init_condition<double>(InitKind::Uniform, shape, params);
  fill_primitives(st, params.gamma, [](const std::array<double, 3>& x, double& rho,
                                       std::array<double, 3>& v, double& p) {
    rho = (x[0] >= 0.25 && x[0] < 0.625) ? 2.0 : 1.0;
    v = {1.0, 0.0, 0.0};
    p = 1.0;
  });

  auto pencil_tv = [&](int j, int k) {
    double tv = 0.0;
    for (int i = 0; i < n; ++i)
      tv += std::abs(st.rho[shape.index(wrap(i + 1, n), j, k)] - st.rho[shape.index(i, j, k)]);
    return tv;
  };
  std::vector<double> initial;
  for (int k = 0; k < shape.n3; ++k)
    for (int j = 0; j < shape.n2; ++j) initial.push_back(pencil_tv(j, k));

  TvdResult r;
  r.initial_tv = initial.front();
  for (int c = 0; c < cycles; ++c) {
    step_cycle(st, params, exec);
    std::size_t p = 0;
    for (int k = 0; k < shape.n3; ++k)
      for (int j = 0; j < shape.n2; ++j, ++p)
        r.max_increase = std::max(r.max_increase, pencil_tv(j, k) - initial[p]);
  }
  return r;
}

DeterminismResult determinism_run(int n, int cycles, std::vector<int> workers) {
  SchemeParams params;
  const GridShape shape = cube(n, 1.0 / n);
  const auto start = init_condition<double>(InitKind::SolenoidalRandom, shape, params);
  DeterminismResult r;
  r.workers = workers;
  ConservedState<double> reference;
  for (std::size_t w = 0; w < workers.size(); ++w) {
    auto st = start;
    run(st, params, RunLimits{static_cast<std::uint64_t>(cycles), std::nullopt},
        parallel::Executor(workers[w]));
    if (w == 0)
      reference = std::move(st);
    else if (!st.bitwise_equal(reference))
      r.mismatches.push_back(static_cast<int>(w));
  }
  return r;
}

std::vector<CheckResult> comparison_table_checks() {
  struct Row {
    const char* label;
    double code, fractional, flops_pct, bandwidth_pct;
  };
  // Published derived rows of the comparison table.
  const Row published[] = {{"x86(1)", 1.0, 1.0, 3.1, 1.3},
                           {"x86(8)", 6.7, 0.83, 2.6, 8.8},
                           {"Cell", 10.2, 0.42, 1.3, 1.3},
                           {"N-GPU", 105.7, 2.40, 7.4, 19.1},
                           {"A-GPU", 68.5, 0.43, 1.3, 11.3}};
  const auto machines = perf::reference_machines();
  const auto& baseline = perf::find_machine(machines, "x86(1)");
  const GridShape box = cube(128);
  std::vector<CheckResult> out;
  for (const Row& row : published) {
    const auto& m = perf::find_machine(machines, row.label);
    const auto c = perf::criteria(*m.reference_runtime_ms, m, baseline, box);
    const std::string tag = std::string("table.") + row.label;
    out.push_back(within(tag + ".code_speedup", c.code_speedup, row.code, 0.05));
    out.push_back(within(tag + ".fractional_speedup", c.fractional_speedup, row.fractional, 0.05));
    out.push_back(within(tag + ".flops_pct", 100.0 * c.flops_fraction, row.flops_pct, 0.15));
    out.push_back(
        within(tag + ".bandwidth_pct", 100.0 * c.bandwidth_fraction, row.bandwidth_pct, 0.15));
  }
  return out;
}

std::vector<CheckResult> counting_model_checks() {
  const perf::OpCountModel ops;
  const perf::TrafficModel traffic;
  const GridShape box = cube(128);
  const auto flops = perf::flops_per_step(box, ops);
  const auto bytes = perf::bytes_per_step(box, Precision::Single, traffic);
  const double model_gb = bytes.total_bytes() / perf::kBinaryGiga;
  std::vector<CheckResult> out;
  out.push_back(within("count.flop_per_cell", double(ops.flop_per_cell()), 2366.0, 0.0));
  out.push_back(within("count.reads_per_cell", double(traffic.reads_per_cell()), 187.0, 0.0));
  out.push_back(within("count.writes_per_cell", double(traffic.writes_per_cell()), 98.0, 0.0));
  // Model totals in decimal units vs the published totals.
  out.push_back(at_most("count.flop_128_rel_gap",
                        std::abs(flops.model_flops / 1e9 - 4.62) / 4.62, 0.08,
                        "model " + std::to_string(flops.model_flops / 1e9) + " G"));
  out.push_back(at_most("count.bytes_128_rel_gap",
                        std::abs(bytes.total_bytes() / 1e9 - 2.23) / 2.23, 0.08,
                        "model " + std::to_string(bytes.total_bytes() / 1e9) + " GB"));
  // In units of 2^30 the census reproduces the published totals.
  out.push_back(within("count.flop_128_binary", flops.model_binary_gflop, 4.62, 0.005));
  out.push_back(within("count.bytes_128_binary", model_gb, 2.23, 0.005));
  return out;
}

std::vector<CheckResult> run_suite(const SuiteOptions& opts) {
  const parallel::Executor exec(opts.workers);
  const bool q = opts.quick;
  std::vector<CheckResult> out;

  const auto lr = conservation_run(q ? 16 : 32, q ? 10 : 50, exec);
  const std::string cyc = std::to_string(lr.cycles) + " cycles";
  out.push_back(at_most("conservation.mass", lr.mass_drift, 1e-12, cyc));
  for (int m = 0; m < 3; ++m)
    out.push_back(at_most(std::string("conservation.momentum_") + char('x' + m),
                          lr.momentum_drift[m], 1e-12, cyc));
  out.push_back(at_most("conservation.energy", lr.energy_drift, 1e-12, cyc));
  out.push_back(at_most("divergence.max_ratio", lr.divergence_ratio, 1e-12,
                        "max|div b| dx / max|b|, " + cyc));

  out.push_back(at_most("sod.l1_density", sod_l1_error(q ? 256 : 512, 0.15, Limiter::VanLeer, exec),
                        0.02));

  const auto conv = sine_convergence(q ? 32 : 64, exec);
  out.push_back(at_least("convergence.order", conv.order, 1.5,
                         "errors " + std::to_string(conv.coarse_error) + " -> " +
                             std::to_string(conv.fine_error)));

  const auto tvd = advection_tvd(q ? 32 : 64, 20, opts.tvd_limiter, exec);
  out.push_back(at_most("tvd.max_increase", tvd.max_increase, 1e-12,
                        opts.tvd_limiter == Limiter::VanLeer ? "" : "limiter disabled"));

  const auto det = determinism_run(q ? 16 : 64, 2, {1, 2, 4, 8});
  out.push_back(at_most("determinism.mismatches", double(det.mismatches.size()), 0.0,
                        "workers 1,2,4,8"));

  for (auto& c : counting_model_checks()) out.push_back(std::move(c));
  for (auto& c : comparison_table_checks()) out.push_back(std::move(c));
  return out;
}

}  // namespace mhd::validation
