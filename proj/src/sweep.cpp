#include "ks/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "ks/exponents.hpp"
#include "ks/stepper.hpp"

namespace ks {

namespace {

PhaseRow run_point(const SweepConfig& sw, int i1, int i2) {
  PhaseRow row;
  row.a1 = sw.axis1.value(i1);
  row.a2 = sw.axis2.value(i2);
  try {
    const Kinetics k =
        apply_axis_value(apply_axis_value(sw.base.kinetics, sw.axis1.name, row.a1),
                         sw.axis2.name, row.a2);
    row.covered = classify_theorem(k.params).covered;
    const SimState init = make_initial_state(sw.base.grid, sw.base.init);
    const RunResult res = run(init, k, sw.base.run);
    row.cls = classify_boundedness(res.series, res.status);
    row.t_end_reached = res.t_final;
    for (const auto& rec : res.series.records) row.max_linf = std::max(row.max_linf, rec.linf_u);
  } catch (const std::exception& e) {
    row.error = true;
    row.error_message = e.what();
  }
  return row;
}

int worker_count(const SweepConfig& sw) {
  if (const char* env = std::getenv("KS_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return sw.workers;
}

} // namespace

PhaseDiagram run_sweep(const SweepConfig& sw) {
  PhaseDiagram pd;
  pd.axis1 = sw.axis1;
  pd.axis2 = sw.axis2;
  const int jobs = sw.axis1.steps * sw.axis2.steps;
  pd.rows.resize(jobs);

  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int j = next.fetch_add(1);
      if (j >= jobs) return;
      pd.rows[j] = run_point(sw, j / sw.axis2.steps, j % sw.axis2.steps);
    }
  };

  const int workers = std::min(worker_count(sw), jobs);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return pd;
}

void write_phase_csv(const PhaseDiagram& pd, std::ostream& os) {
  os << "axis1,axis2,covered,classification,max_linf,t_end\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << ',' << buf;
  };
  for (const auto& row : pd.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.a1);
    os << buf;
    put(row.a2);
    os << ',' << (row.covered ? "true" : "false") << ','
       << (row.error ? "Error" : to_string(row.cls));
    put(row.max_linf);
    put(row.t_end_reached);
    os << '\n';
  }
}

} // namespace ks
