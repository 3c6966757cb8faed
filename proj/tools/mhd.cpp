// Command-line front end: run, bench, validate, slice.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <variant>

#include "mhd/bench.hpp"
#include "mhd/config.hpp"
#include "mhd/errors.hpp"
#include "mhd/init.hpp"
#include "mhd/slice.hpp"
#include "mhd/snapshot.hpp"
#include "mhd/stepper.hpp"
#include "mhd/validation/checks.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<int> size;
  std::optional<int> workers;
  std::optional<std::uint64_t> cycles;
  std::optional<double> t_end;
  std::optional<std::string> precision;
  std::optional<std::string> ic;
  std::optional<std::string> out;
};

mhd::RunConfig resolve(const Overrides& o) {
  mhd::RunConfig cfg;
  cfg.workers = mhd::parallel::default_workers();
  if (!o.config.empty()) cfg = mhd::load_config(o.config, cfg);
  if (o.size) mhd::apply_setting(cfg, "size", std::to_string(*o.size));
  if (o.workers) cfg.workers = *o.workers;
  if (o.cycles) cfg.cycles = *o.cycles;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.precision) cfg.params.precision = mhd::parse_precision(*o.precision);
  if (o.ic) cfg.ic = mhd::parse_init_kind(*o.ic);
  if (o.out) cfg.output = *o.out;
  if (!cfg.cycles && !cfg.t_end) cfg.cycles = 10;
  cfg.validate();
  return cfg;
}

template <class Real>
int run_typed(const mhd::RunConfig& cfg) {
  const mhd::parallel::Executor exec(cfg.workers);
  auto st = mhd::init_condition<Real>(cfg.ic, cfg.shape, cfg.params, cfg.ic_params);
  const auto t0 = mhd::totals(st, exec);
  std::cout << "# " << mhd::init_kind_name(cfg.ic) << ' ' << cfg.shape.n1 << 'x' << cfg.shape.n2
            << 'x' << cfg.shape.n3 << ' ' << mhd::precision_name(cfg.params.precision) << ", "
            << cfg.workers << " worker(s)\n";
  std::cout << "cycle,time,dt,wall_ms,max_div_ratio\n";
  mhd::run(st, cfg.params, mhd::RunLimits{cfg.cycles, cfg.t_end}, exec,
           [&](const mhd::StepReport& rep) {
             const double bmax = mhd::max_abs_b(st);
             const double div =
                 bmax > 0 ? mhd::max_abs(mhd::discrete_divergence(st, exec).values) * st.shape.dx / bmax
                          : 0.0;
             std::cout << st.cycle << ',' << st.time << ',' << rep.dt << ',' << rep.wall_ms << ','
                       << div << '\n';
             if (cfg.snapshot_every && !cfg.output.empty() && st.cycle % cfg.snapshot_every == 0)
               mhd::write_snapshot(st, cfg.output + "." + std::to_string(st.cycle));
           });
  const auto t1 = mhd::totals(st, exec);
  std::cout << std::setprecision(17) << "# mass " << t0.mass << " -> " << t1.mass << ", energy "
            << t0.energy << " -> " << t1.energy << '\n';
  if (!cfg.output.empty()) {
    mhd::write_snapshot(st, cfg.output);
    std::cout << "# wrote " << cfg.output << '\n';
  }
  return 0;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensionally split TVD MHD solver"};
  app.require_subcommand(1);

  Overrides o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "key = value run configuration")->check(CLI::ExistingFile);
    sub->add_option("--size", o.size, "cube side (cells)");
    sub->add_option("--workers", o.workers, "worker count (default: $MHD_WORKERS or 1)");
    sub->add_option("--precision", o.precision, "single or double");
  };

  auto* run = app.add_subcommand("run", "evolve an initial condition");
  add_common(run);
  run->add_option("--cycles", o.cycles, "number of cycles (default 10)");
  run->add_option("--t-end", o.t_end, "end time instead of a cycle count");
  run->add_option("--ic", o.ic, "uniform, advect_pulse, sod_x, brio_wu_x, solenoidal_random, orszag_tang_xy");
  run->add_option("--out", o.out, "final snapshot path");

  std::string machines_path, bench_out, sizes = "16,32,64,128", worker_list;
  int reps = 5;
  bool append_host = false;
  auto* bench = app.add_subcommand("bench", "time cycles over box sizes");
  add_common(bench);
  bench->add_option("--sizes", sizes, "comma-separated cube sides");
  bench->add_option("--worker-list", worker_list, "comma-separated worker counts");
  bench->add_option("--reps", reps, "timed cycles per size (>= 5)");
  bench->add_option("--machines", machines_path, "machine-spec file for the derived block");
  bench->add_flag("--append-host", append_host, "append the measured host record to --machines");
  bench->add_option("--out", bench_out, "write the tables here as well");

  bool quick = false, limiter_bug = false;
  std::string validate_out;
  int validate_workers = mhd::parallel::default_workers();
  auto* validate = app.add_subcommand("validate", "run the invariant suites");
  validate->add_option("--workers", validate_workers, "worker count");
  validate->add_flag("--quick", quick, "smaller boxes");
  validate->add_flag("--limiter-bug", limiter_bug)->group("");
  validate->add_option("--out", validate_out, "write the report here as well");

  std::string snap_path, slice_out = "-", axis = "z";
  int index = 0;
  double gamma = mhd::SchemeParams{}.gamma;
  auto* slice = app.add_subcommand("slice", "export one plane of a snapshot");
  slice->add_option("snapshot", snap_path)->required()->check(CLI::ExistingFile);
  slice->add_option("--axis", axis, "plane normal: x, y or z");
  slice->add_option("--index", index, "plane index along the normal");
  slice->add_option("--gamma", gamma, "adiabatic index for the entropy column");
  slice->add_option("--out", slice_out, "CSV path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = resolve(o);
      return cfg.params.precision == mhd::Precision::Single ? run_typed<float>(cfg)
                                                            : run_typed<double>(cfg);
    }

    if (*bench) {
      mhd::BenchOptions opts;
      opts.sizes = o.size ? std::vector<int>{*o.size} : parse_list(sizes);
      opts.workers = worker_list.empty()
                         ? std::vector<int>{o.workers.value_or(mhd::parallel::default_workers())}
                         : parse_list(worker_list);
      opts.repetitions = reps;
      if (o.precision) opts.precision = mhd::parse_precision(*o.precision);
      if (!o.config.empty()) opts.params = mhd::load_config(o.config).params;
      opts.machines = machines_path.empty() ? mhd::perf::reference_machines()
                                            : mhd::perf::load_machines(machines_path);
      std::cout << "size,median_ms,min_ms,workers\n";
      const auto res = mhd::run_bench(opts, [](const mhd::BenchRow& r) {
        std::vector<mhd::BenchRow> one{r};
        std::ostringstream os;
        mhd::write_bench_rows(one, os);
        const std::string text = os.str();
        std::cout << text.substr(text.find('\n') + 1) << std::flush;
      });
      std::cout << '\n';
      mhd::write_derived(res.derived, std::cout);
      if (res.host_record) {
        const std::string rec = mhd::perf::format_machine(*res.host_record);
        std::cout << '\n' << rec << '\n';
        if (append_host && !machines_path.empty()) std::ofstream(machines_path, std::ios::app) << rec << '\n';
      }
      if (!bench_out.empty()) {
        std::ofstream f(bench_out);
        mhd::write_bench_rows(res.rows, f);
        f << '\n';
        mhd::write_derived(res.derived, f);
      }
      return 0;
    }

    if (*validate) {
      mhd::validation::SuiteOptions opts;
      opts.workers = validate_workers;
      opts.quick = quick;
      if (limiter_bug) opts.tvd_limiter = mhd::Limiter::Central;
      const auto checks = mhd::validation::run_suite(opts);
      std::ofstream file;
      if (!validate_out.empty()) file.open(validate_out);
      bool ok = true;
      for (const auto& c : checks) {
        const std::string line = mhd::validation::format_check(c);
        std::cout << line << '\n';
        if (file) file << line << '\n';
        ok = ok && c.pass;
      }
      return ok ? 0 : 1;
    }

    if (*slice) {
      const auto any = mhd::read_snapshot(snap_path);
      const mhd::SlicePlane plane{mhd::parse_axis(axis), index};
      std::visit(
          [&](const auto& st) {
            if (slice_out == "-")
              mhd::slice_export(st, plane, gamma, std::cout);
            else
              mhd::slice_export(st, plane, gamma, slice_out);
          },
          any);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
