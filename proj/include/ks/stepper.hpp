#pragma once

#include <optional>
#include <vector>

#include "ks/diagnostics.hpp"
#include "ks/grid.hpp"
#include "ks/kinetics.hpp"

namespace ks {

struct SimState {
  Field u;
  Field v;
  double t = 0.0;
  double dt = 0.0;
};

// CFL-style step bound:
//   dt = sigma * min( h^2 / (2 dim D_max), h / (c_max + eps) )
// with c_max the fastest |S'(u_donor)| |grad v . n| over faces, additionally
// capped by sigma * h / (fastest per-donor outflow speed) so the explicit
// donor-cell update cannot empty a cell, and by dt_max.
double stable_dt(const SimState& state, const Kinetics& k, double sigma, double dt_max);

// One implicit (backward Euler) update of the v equation with source u:
//   (I + dt (I - lap)) v_new = v + dt u
// 1D: direct tridiagonal solve. 2D: conjugate gradients to relative residual
// <= 1e-12 (contract: <= 1e-10). The system matrix is an M-matrix, so
// nonnegative inputs give nonnegative output; roundoff-scale negatives are
// clamped to zero.
Field implicit_v_step(const Field& v, const Field& u, double dt);

struct StepResult {
  SimState state;
  bool underflow = false;   // dt fell below 1e-12 while rejecting
  int rejections = 0;
  double mass_rel_err = 0;  // |mass change - dt integral f| / scale
  double source_integral = 0;       // integral f(u) before the step
  double envelope_rhs = 0;          // a|Omega| - mu integral u^gamma (if env)
  bool envelope_checked = false;
};

// Explicit positivity-preserving update of u followed by the implicit v
// solve. The tentative dt is state.dt; steps producing a negative cell are
// rejected and retried with dt/2 (the explicit right-hand side does not
// change, so rejections are cheap). `env` enables the per-step dissipation
// bookkeeping integral f(u) <= a|Omega| - mu integral u^gamma.
StepResult step(const SimState& state, const Kinetics& k,
                const std::optional<EnvelopeParams>& env = std::nullopt);

enum class InitPreset { Constant, Cosine, Gaussian, Random };
enum class V0Mode { Smoothed, Constant, SameAsU };

struct InitSpec {
  InitPreset kind = InitPreset::Cosine;
  double base = 1.0;
  double amplitude = 0.0;
  double width = 0.1;      // Gaussian only
  double u_max = 1.0;      // Random only
  unsigned seed = 0;       // Random only
  V0Mode v0_mode = V0Mode::Smoothed;
  double v0_value = 0.0;
  double v0_tau = 0.1;     // pseudo-time of the smoothing v-step
};

SimState make_initial_state(const Grid& g, const InitSpec& init);

struct RunSettings {
  double t_end = 10.0;
  double u_cap = 1e6;
  double dt_max = 1e-2;
  double sigma = 0.4;
  double record_every = 0.1;
  std::vector<double> lp_list{2.0};
  std::vector<double> ls_list{2.0};
  double energy_p = 2.0;
  double energy_q = 2.0;
  std::vector<double> snapshot_times;
};

struct Snapshot {
  double t = 0;
  Field u, v;
};

struct RunResult {
  RunStatus status = RunStatus::Completed;
  double t_final = 0;
  DiagnosticsSeries series;
  SimState final_state;
  std::optional<double> blowup_time_estimate;
  std::vector<Snapshot> snapshots;

  long steps = 0;
  long rejections = 0;
  double min_u_seen = 0;
  double min_v_seen = 0;
  double mass_law_max_rel_err = 0;
  long dissipation_violations = 0;
};

// Integrates to t_end, or stops early on max(u) > u_cap (SuspectedBlowup) or
// on step underflow (SuspectedBlowup when the sup norm was growing,
// StepUnderflow otherwise). Numerical events are statuses, not errors.
RunResult run(const SimState& initial, const Kinetics& k, const RunSettings& settings);

} // namespace ks
