#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ks/grid.hpp"
#include "ks/kinetics.hpp"
#include "ks/stepper.hpp"

namespace ks {

// Parse/validation failure; messages carry the line number or offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimConfig {
  Grid grid;
  Kinetics kinetics;
  InitSpec init;
  RunSettings run;
};

struct SweepAxis {
  std::string name; // alpha | beta | gamma
  double lo = 0, hi = 0;
  int steps = 0;

  double value(int i) const { return lo + (hi - lo) * i / (steps - 1); }
};

struct SweepConfig {
  SweepAxis axis1, axis2;
  SimConfig base;
  int workers = 4;
};

using ParsedConfig = std::variant<SimConfig, SweepConfig>;

// INI-like format: sections [grid] [kinetics] [init] [run] [sweep],
// `key = value` lines, `#` comments, case-sensitive keys, unknown keys are
// errors. A [sweep] section selects SweepConfig.
ParsedConfig parse_config(const std::string& text);

SimConfig parse_sim_config(const std::string& text);

// Kinetics of a sweep lattice point: base with one ModelParams field renamed
// by the axis replaced. Throws ConfigError for unknown axis names.
Kinetics apply_axis_value(const Kinetics& base, const std::string& axis, double value);

} // namespace ks
