#include "mhd/perf.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mhd/errors.hpp"

namespace mhd::perf {

void MachineSpec::validate() const {
  if (label.empty()) throw Error("machine record without label");
  if (!(peak_gflops > 0.0)) throw Error("machine '" + label + "': peak_gflops must be positive");
  if (!(peak_gbps > 0.0)) throw Error("machine '" + label + "': peak_gbps must be positive");
  if (reference_runtime_ms && !(*reference_runtime_ms > 0.0))
    throw Error("machine '" + label + "': reference_runtime_ms_128 must be positive");
}

FlopCount flops_per_step(const GridShape& shape, const OpCountModel& model) {
  const double cells = static_cast<double>(shape.cells());
  FlopCount f;
  f.model_flops = static_cast<double>(model.flop_per_cell()) * cells;
  f.model_binary_gflop = f.model_flops / kBinaryGiga;
  f.canonical_flops = model.canonical_step_gflop_128 * 1e9 * cells / kCanonicalCells;
  f.canonical_exact = shape.n1 == 128 && shape.n2 == 128 && shape.n3 == 128;
  return f;
}

std::size_t bytes_per_real(Precision p) { return p == Precision::Single ? 4 : 8; }

ByteCount bytes_per_step(const GridShape& shape, Precision precision, const TrafficModel& model) {
  const double cells = static_cast<double>(shape.cells());
  const double word = static_cast<double>(bytes_per_real(precision));
  ByteCount b;
  b.read_bytes = model.reads_per_cell() * cells * word;
  b.write_bytes = model.writes_per_cell() * cells * word;
  const double scale = cells / kCanonicalCells;
  b.canonical_read_gb = model.canonical_read_gb_128 * scale;
  b.canonical_write_gb = model.canonical_write_gb_128 * scale;
  b.canonical_total_gb = model.canonical_total_gb_128 * scale;
  return b;
}

Criteria criteria(double runtime_ms, const MachineSpec& machine, const MachineSpec& baseline,
                  const GridShape& shape, const OpCountModel& ops, const TrafficModel& traffic) {
  if (!(runtime_ms > 0.0)) throw Error("runtime must be positive");
  if (!baseline.reference_runtime_ms)
    throw Error("baseline '" + baseline.label + "' has no reference runtime");
  machine.validate();
  baseline.validate();

  const double runtime_s = runtime_ms / 1000.0;
  const double gflop = flops_per_step(shape, ops).canonical_flops / 1e9;
  const double gbytes = bytes_per_step(shape, Precision::Single, traffic).canonical_total_gb;

  Criteria c;
  c.code_speedup = *baseline.reference_runtime_ms / runtime_ms;
  c.fractional_speedup = c.code_speedup / (machine.peak_gflops / baseline.peak_gflops);
  c.achieved_gflops = gflop / runtime_s;
  c.achieved_gbps = gbytes / runtime_s;
  c.flops_fraction = c.achieved_gflops / machine.peak_gflops;
  c.bandwidth_fraction = c.achieved_gbps / machine.peak_gbps;
  return c;
}

namespace {

double parse_number(const std::string& key, const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("line " + std::to_string(line) + ": key '" + key + "': not a number: '" + value + "'");
}

}  // namespace

std::vector<MachineSpec> parse_machines(std::istream& in) {
  std::vector<MachineSpec> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream fields(text);
    std::string tok;
    MachineSpec m;
    bool any = false;
    while (fields >> tok) {
      any = true;
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error("line " + std::to_string(line) + ": expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      if (key == "label")
        m.label = value;
      else if (key == "peak_gflops")
        m.peak_gflops = parse_number(key, value, line);
      else if (key == "peak_gbps")
        m.peak_gbps = parse_number(key, value, line);
      else if (key == "watts")
        m.watts = parse_number(key, value, line);
      else if (key == "reference_runtime_ms_128")
        m.reference_runtime_ms = parse_number(key, value, line);
      else
        throw Error("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
    if (!any) continue;
    try {
      m.validate();
    } catch (const Error& e) {
      throw Error("line " + std::to_string(line) + ": " + e.what());
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MachineSpec> load_machines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open machine file '" + path + "'");
  return parse_machines(in);
}

std::string format_machine(const MachineSpec& m) {
  std::ostringstream os;
  os << std::setprecision(10) << "label=" << m.label << " peak_gflops=" << m.peak_gflops
     << " peak_gbps=" << m.peak_gbps;
  if (m.watts) os << " watts=" << *m.watts;
  if (m.reference_runtime_ms) os << " reference_runtime_ms_128=" << *m.reference_runtime_ms;
  return os.str();
}

const MachineSpec& find_machine(const std::vector<MachineSpec>& ms, const std::string& label) {
  for (const auto& m : ms)
    if (m.label == label) return m;
  throw Error("no machine labelled '" + label + "'");
}

std::vector<MachineSpec> reference_machines() {
  return {
      {"x86(1)", 17.0, 19.2, std::nullopt, 8770.0},
      {"x86(8)", 136.0, 19.2, 170.0, 1315.0},
      {"Cell", 409.6, 204.8, 440.0, 864.0},
      {"N-GPU", 748.8, 141.0, 370.0, 83.0},
      {"A-GPU", 2720.0, 153.6, 360.0, 128.0},
  };
}

TimingStats summarize(std::vector<double> samples_ms) {
  TimingStats s;
  s.samples = samples_ms.size();
  if (samples_ms.empty()) return s;
  std::sort(samples_ms.begin(), samples_ms.end());
  s.min_ms = samples_ms.front();
  const std::size_t n = samples_ms.size();
  s.median_ms = n % 2 ? samples_ms[n / 2] : (samples_ms[n / 2 - 1] + samples_ms[n / 2]) / 2.0;
  return s;
}

}  // namespace mhd::perf
