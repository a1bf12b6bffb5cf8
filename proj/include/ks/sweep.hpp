#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ks/config.hpp"
#include "ks/diagnostics.hpp"

namespace ks {

struct PhaseRow {
  double a1 = 0, a2 = 0;
  bool covered = false;         // classify_theorem at this lattice point
  BoundednessClass cls = BoundednessClass::Inconclusive;
  bool error = false;           // per-point failure; row kept, sweep continues
  std::string error_message;
  double max_linf = 0;
  double t_end_reached = 0;
};

struct PhaseDiagram {
  SweepAxis axis1, axis2;
  std::vector<PhaseRow> rows; // axis1-major lattice order
};

// Runs the lattice on a worker pool (KS_WORKERS overrides the config count).
// Output is deterministic for any worker count: rows land in a pre-sized
// table in lattice order and runs share nothing.
PhaseDiagram run_sweep(const SweepConfig& sweep);

// CSV with header axis1,axis2,covered,classification,max_linf,t_end.
void write_phase_csv(const PhaseDiagram& pd, std::ostream& os);

} // namespace ks
