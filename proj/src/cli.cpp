#include "ks/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "ks/report.hpp"
#include "ks/stepper.hpp"
#include "ks/sweep.hpp"

namespace ks {

namespace {

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

void write_snapshot(const Snapshot& snap, std::ostream& os) {
  const Grid& g = snap.u.grid;
  os << (g.dim == 1 ? "x,u,v" : "x,y,u,v") << '\n';
  char buf[64];
  auto put = [&](double v, bool first = false) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!first) os << ',';
    os << buf;
  };
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      put(g.x_center(i), true);
      if (g.dim == 2) put(g.y_center(j));
      put(snap.u.data[g.idx(i, j)]);
      put(snap.v.data[g.idx(i, j)]);
      os << '\n';
    }
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
  return f;
}

} // namespace

int cmd_classify(const ModelParams& params, std::ostream& os) {
  const Classification c = classify_theorem(params);
  print_classification(os, params, c);
  return c.covered ? 0 : 3;
}

int cmd_feasible(const ModelParams& params, FeasibilityCase kind, bool with_oracle,
                 std::ostream& os) {
  const Classification c = classify_theorem(params);
  FeasibilityReport rep;
  try {
    rep = feasible_pq(params, kind);
  } catch (const InfeasibleParamsError& e) {
    os << "infeasible: " << e.what() << "\n";
    print_classification(os, params, c);
    return 3;
  }
  print_feasibility(os, params, kind, c, rep);
  if (with_oracle) {
    const OracleReport orc = brute_force_feasibility(params, kind);
    os << "oracle: " << orc.passing << " of " << orc.checked
       << " lattice points pass; witness "
       << (oracle_point_passes(params, formal_s(kind, params.n), rep.p_witness,
                               rep.q_witness)
               ? "passes"
               : "FAILS")
       << " direct evaluation\n";
  }
  return 0;
}

int cmd_simulate(const SimConfig& cfg, const std::string& out_dir, std::ostream& os) {
  namespace fs = std::filesystem;
  const fs::path out(out_dir.empty() ? "." : out_dir);
  fs::create_directories(out);

  const SimState init = make_initial_state(cfg.grid, cfg.init);
  const RunResult res = run(init, cfg.kinetics, cfg.run);

  {
    auto f = open_out(out / "series.csv");
    write_series_csv(res.series, f);
  }
  for (const auto& snap : res.snapshots) {
    auto f = open_out(out / ("snapshot_t" + fmt_time(snap.t) + ".csv"));
    write_snapshot(snap, f);
  }

  double max_linf = 0;
  for (const auto& rec : res.series.records) max_linf = std::max(max_linf, rec.linf_u);
  os << "status=" << to_string(res.status) << "\n"
     << "t_final=" << res.t_final << "\n"
     << "steps=" << res.steps << " rejections=" << res.rejections << "\n"
     << "max_linf_u=" << max_linf << "\n"
     << "mass_law_max_rel_err=" << res.mass_law_max_rel_err << "\n"
     << "dissipation_violations=" << res.dissipation_violations << "\n"
     << "classification=" << to_string(classify_boundedness(res.series, res.status)) << "\n";
  if (res.blowup_time_estimate)
    os << "blowup_time_estimate=" << *res.blowup_time_estimate << "\n";

  switch (res.status) {
    case RunStatus::Completed: return 0;
    case RunStatus::SuspectedBlowup: return 2;
    case RunStatus::StepUnderflow: return 4;
  }
  return 1;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& out_dir, std::ostream& os) {
  namespace fs = std::filesystem;
  const fs::path out(out_dir.empty() ? "." : out_dir);
  fs::create_directories(out);

  const PhaseDiagram pd = run_sweep(cfg);
  {
    auto f = open_out(out / "phase.csv");
    write_phase_csv(pd, f);
  }
  long covered = 0, bounded = 0, blowup = 0, errors = 0;
  for (const auto& row : pd.rows) {
    covered += row.covered;
    if (row.error) ++errors;
    else if (row.cls == BoundednessClass::Bounded) ++bounded;
    else if (row.cls == BoundednessClass::SuspectedBlowup) ++blowup;
  }
  os << "points=" << pd.rows.size() << " covered=" << covered << " bounded=" << bounded
     << " suspected_blowup=" << blowup << " errors=" << errors << "\n"
     << "wrote " << (out / "phase.csv").string() << "\n";
  return 0;
}

} // namespace ks
