#pragma once

#include <iosfwd>
#include <string>

#include "ks/config.hpp"
#include "ks/exponents.hpp"

namespace ks {

// Subcommand bodies; CLI flag parsing lives in the ks tool. Exit codes:
//   classify/feasible: 0 covered/feasible, 3 not, 1 invalid arguments
//   simulate:          0 completed, 2 suspected blow-up, 4 step underflow,
//                      1 config/IO error
//   sweep:             0 completed, 1 config/IO error
int cmd_classify(const ModelParams& params, std::ostream& os);
int cmd_feasible(const ModelParams& params, FeasibilityCase kind, bool with_oracle,
                 std::ostream& os);
int cmd_simulate(const SimConfig& cfg, const std::string& out_dir, std::ostream& os);
int cmd_sweep(const SweepConfig& cfg, const std::string& out_dir, std::ostream& os);

} // namespace ks
