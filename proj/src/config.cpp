#include "mhd/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error("key '" + key + "': expected a number, got '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long n = std::stoll(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  throw Error("key '" + key + "': expected an integer, got '" + v + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "size",   "nx",       "ny",       "nz",      "dx",      "gamma",     "courant", "integrator",
      "precision", "ic",    "seed",     "rho",     "pressure", "vx",       "vy",
      "vz",     "bx",       "by",       "bz",      "amplitude", "profile", "field_amplitude",
      "workers", "cycles",  "t_end",    "output",  "snapshot_every"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto positive_int = [&] {
    const long long n = to_int(key, value);
    if (n <= 0) throw Error("key '" + key + "': must be positive");
    return static_cast<int>(n);
  };
  try {
    if (key == "size") {
      cfg.shape.n1 = cfg.shape.n2 = cfg.shape.n3 = positive_int();
    } else if (key == "nx") {
      cfg.shape.n1 = positive_int();
    } else if (key == "ny") {
      cfg.shape.n2 = positive_int();
    } else if (key == "nz") {
      cfg.shape.n3 = positive_int();
    } else if (key == "dx") {
      cfg.shape.dx = to_double(key, value);
    } else if (key == "gamma") {
      cfg.params.gamma = to_double(key, value);
    } else if (key == "courant") {
      cfg.params.courant = to_double(key, value);
    } else if (key == "integrator") {
      cfg.params.integrator = parse_integrator(value);
    } else if (key == "precision") {
      cfg.params.precision = parse_precision(value);
    } else if (key == "ic") {
      cfg.ic = parse_init_kind(value);
    } else if (key == "seed") {
      cfg.ic_params.seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "rho") {
      cfg.ic_params.rho = to_double(key, value);
    } else if (key == "pressure") {
      cfg.ic_params.pressure = to_double(key, value);
    } else if (key == "vx" || key == "vy" || key == "vz") {
      cfg.ic_params.velocity[key[1] - 'x'] = to_double(key, value);
    } else if (key == "bx" || key == "by" || key == "bz") {
      cfg.ic_params.field[key[1] - 'x'] = to_double(key, value);
    } else if (key == "amplitude") {
      cfg.ic_params.amplitude = to_double(key, value);
    } else if (key == "field_amplitude") {
      cfg.ic_params.field_amplitude = to_double(key, value);
    } else if (key == "profile") {
      if (value == "gaussian")
        cfg.ic_params.profile = PulseProfile::Gaussian;
      else if (value == "sine")
        cfg.ic_params.profile = PulseProfile::Sine;
      else
        throw Error("unknown profile '" + value + "'");
    } else if (key == "workers") {
      cfg.workers = positive_int();
    } else if (key == "cycles") {
      const long long n = to_int(key, value);
      if (n < 0) throw Error("must not be negative");
      cfg.cycles = static_cast<std::uint64_t>(n);
    } else if (key == "t_end") {
      cfg.t_end = to_double(key, value);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "snapshot_every") {
      const long long n = to_int(key, value);
      if (n < 0) throw Error("must not be negative");
      cfg.snapshot_every = static_cast<std::uint64_t>(n);
    } else {
      throw Error("unknown key '" + key + "'");
    }
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (msg.rfind("key '", 0) == 0 || msg.rfind("unknown key", 0) == 0) throw;
    throw Error("key '" + key + "': " + msg);
  }
}

void RunConfig::validate() const {
  shape.validate();
  params.validate();
  if (workers < 1) throw Error("workers must be positive");
  if (!cycles && !t_end) throw Error("either cycles or t_end must be set");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error("line " + std::to_string(number) + ": missing key");
    try {
      apply_setting(base, key, value);
    } catch (const Error& e) {
      throw Error("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  return parse_config(in, std::move(base));
}

}  // namespace mhd
