#pragma once

// Flat key = value run configuration. Blank lines and '#' comments are
// ignored; every error names the line and the key.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhd/grid.hpp"
#include "mhd/init.hpp"

namespace mhd {

struct RunConfig {
  GridShape shape = cube(32);
  SchemeParams params;
  InitKind ic = InitKind::SolenoidalRandom;
  InitParams ic_params;
  int workers = 1;
  std::optional<std::uint64_t> cycles;
  std::optional<double> t_end;
  /// Final snapshot path; empty writes nothing.
  std::string output;
  /// Write `output`.<cycle> every N cycles (0 = never).
  std::uint64_t snapshot_every = 0;

  void validate() const;
};

/// Applies one setting; throws mhd::Error("key '<key>': ...") on bad input.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Names accepted by apply_setting.
const std::vector<std::string>& config_keys();

}  // namespace mhd
