#include "ks/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ks {

namespace {

constexpr double kDtUnderflow = 1e-12;

double kahan_sum(const std::vector<double>& vals) {
  double sum = 0.0, comp = 0.0;
  for (double v : vals) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Largest advective speed |S'(u_donor)| |grad v| and largest per-donor
// outflow speed S(u_donor)|grad v| / u_donor over faces of one axis.
void face_speeds(const Field& u, const Field& v, const Kinetics& k, int axis,
                 double& c_max, double& outflow_max) {
  const Grid& g = u.grid;
  const int nx = g.nx(), ny = g.ny();
  const double h = g.h[axis];
  const int ilim = axis == 0 ? nx - 1 : nx;
  const int jlim = axis == 0 ? ny : ny - 1;
  for (int j = 0; j < jlim; ++j) {
    for (int i = 0; i < ilim; ++i) {
      const std::size_t l = g.idx(i, j);
      const std::size_t r = axis == 0 ? g.idx(i + 1, j) : g.idx(i, j + 1);
      const double grad = (v.data[r] - v.data[l]) / h;
      const double donor = grad > 0.0 ? u.data[l] : u.data[r];
      c_max = std::max(c_max, std::abs(k.sensitivity_prime(donor)) * std::abs(grad));
      if (donor > 0.0)
        outflow_max = std::max(outflow_max, k.sensitivity(donor) * std::abs(grad) / donor);
    }
  }
}

} // namespace

double stable_dt(const SimState& state, const Kinetics& k, double sigma, double dt_max) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("stable_dt: need 0 < sigma < 1");
  const Grid& g = state.u.grid;

  double d_max = 0.0;
  for (double uc : state.u.data) d_max = std::max(d_max, k.diffusivity(uc));

  double c_max = 0.0, outflow_max = 0.0;
  for (int axis = 0; axis < g.dim; ++axis)
    face_speeds(state.u, state.v, k, axis, c_max, outflow_max);

  const double h_min = g.dim == 1 ? g.h[0] : std::min(g.h[0], g.h[1]);
  const double diff_limit = h_min * h_min / (2.0 * g.dim * d_max);
  const double adv_limit = h_min / (c_max + 1e-30);
  double dt = sigma * std::min(diff_limit, adv_limit);
  dt = std::min(dt, sigma * h_min / (outflow_max + 1e-30));
  return std::min(dt, dt_max);
}

Field implicit_v_step(const Field& v, const Field& u, double dt) {
  if (!v.grid.same_as(u.grid)) throw std::invalid_argument("implicit_v_step: grid mismatch");
  const Grid& g = v.grid;
  const std::size_t n = g.size();

  // rhs = v + dt u; system (1+dt) I - dt lap
  std::vector<double> rhs(n);
  for (std::size_t c = 0; c < n; ++c) rhs[c] = v.data[c] + dt * u.data[c];

  Field out{g, std::vector<double>(n)};

  if (g.dim == 1) {
    // Thomas algorithm on the tridiagonal M-matrix.
    const double c = dt / (g.h[0] * g.h[0]);
    const int nx = g.nx();
    std::vector<double> diag(nx), work(nx);
    for (int i = 0; i < nx; ++i) {
      const int neighbors = (i > 0 ? 1 : 0) + (i + 1 < nx ? 1 : 0);
      diag[i] = 1.0 + dt + neighbors * c;
    }
    double bet = diag[0];
    out.data[0] = rhs[0] / bet;
    for (int i = 1; i < nx; ++i) {
      work[i] = -c / bet;
      bet = diag[i] - (-c) * work[i];
      out.data[i] = (rhs[i] - (-c) * out.data[i - 1]) / bet;
    }
    for (int i = nx - 2; i >= 0; --i) out.data[i] -= work[i + 1] * out.data[i + 1];
  } else {
    // Matrix-free conjugate gradients; the operator is SPD and well
    // conditioned for CFL-sized dt, so a handful of iterations suffice.
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
      Field xf{g, x};
      Field lap = laplacian_neumann(xf);
      for (std::size_t cidx = 0; cidx < n; ++cidx)
        y[cidx] = (1.0 + dt) * x[cidx] - dt * lap.data[cidx];
    };
    std::vector<double> x = v.data; // warm start
    std::vector<double> r(n), p(n), ap(n);
    apply(x, ap);
    double rr = 0.0, bb = 0.0;
    for (std::size_t cidx = 0; cidx < n; ++cidx) {
      r[cidx] = rhs[cidx] - ap[cidx];
      p[cidx] = r[cidx];
      rr += r[cidx] * r[cidx];
      bb += rhs[cidx] * rhs[cidx];
    }
    const double tol2 = 1e-24 * std::max(bb, 1e-300);
    for (std::size_t it = 0; it < 16 * n && rr > tol2; ++it) {
      apply(p, ap);
      double pap = 0.0;
      for (std::size_t cidx = 0; cidx < n; ++cidx) pap += p[cidx] * ap[cidx];
      const double alpha = rr / pap;
      double rr_new = 0.0;
      for (std::size_t cidx = 0; cidx < n; ++cidx) {
        x[cidx] += alpha * p[cidx];
        r[cidx] -= alpha * ap[cidx];
        rr_new += r[cidx] * r[cidx];
      }
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t cidx = 0; cidx < n; ++cidx) p[cidx] = r[cidx] + beta * p[cidx];
    }
    out.data = std::move(x);
  }

  for (double& val : out.data) val = std::max(val, 0.0);
  return out;
}

StepResult step(const SimState& state, const Kinetics& k,
                const std::optional<EnvelopeParams>& env) {
  const Grid& g = state.u.grid;
  const std::size_t n = g.size();

  const Field diff = diffusive_divergence(state.u, k);
  const Field chem = chemotactic_divergence(state.u, state.v, k);
  std::vector<double> fvals(n);
  for (std::size_t c = 0; c < n; ++c) fvals[c] = k.source(state.u.data[c]);

  std::vector<double> rhs(n);
  for (std::size_t c = 0; c < n; ++c)
    rhs[c] = diff.data[c] - chem.data[c] + fvals[c];

  StepResult res;
  res.source_integral = g.cell_volume * kahan_sum(fvals);
  if (env) {
    std::vector<double> ug(n);
    for (std::size_t c = 0; c < n; ++c) ug[c] = pow_gamma(state.u.data[c], env->gamma);
    res.envelope_rhs = env->a * g.volume() - env->mu * g.cell_volume * kahan_sum(ug);
    res.envelope_checked = true;
  }

  double dt = state.dt;
  Field u_new{g, std::vector<double>(n)};
  for (;;) {
    bool negative = false;
    for (std::size_t c = 0; c < n; ++c) {
      u_new.data[c] = state.u.data[c] + dt * rhs[c];
      if (u_new.data[c] < 0.0) {
        negative = true;
        break;
      }
    }
    if (!negative) break;
    dt *= 0.5;
    ++res.rejections;
    if (dt < kDtUnderflow) {
      res.underflow = true;
      res.state = state;
      return res;
    }
  }

  const double mass_old = integrate(state.u);
  const double mass_new = integrate(u_new);
  const double expected = dt * res.source_integral;
  const double scale = std::max({1.0, std::abs(mass_old), std::abs(expected)});
  res.mass_rel_err = std::abs(mass_new - mass_old - expected) / scale;

  res.state.u = std::move(u_new);
  res.state.v = implicit_v_step(state.v, res.state.u, dt);
  res.state.t = state.t + dt;
  res.state.dt = dt;
  return res;
}

SimState make_initial_state(const Grid& g, const InitSpec& init) {
  Field u = Field::zeros(g);
  const double pi = std::acos(-1.0);
  switch (init.kind) {
    case InitPreset::Constant:
      for (double& val : u.data) val = init.base;
      break;
    case InitPreset::Cosine:
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
          double val = std::cos(pi * g.x_center(i) / g.length[0]);
          if (g.dim == 2) val *= std::cos(pi * g.y_center(j) / g.length[1]);
          u.data[g.idx(i, j)] = init.base + init.amplitude * val;
        }
      break;
    case InitPreset::Gaussian:
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
          const double dx = g.x_center(i) - 0.5 * g.length[0];
          double r2 = dx * dx;
          if (g.dim == 2) {
            const double dy = g.y_center(j) - 0.5 * g.length[1];
            r2 += dy * dy;
          }
          u.data[g.idx(i, j)] =
              init.base + init.amplitude * std::exp(-r2 / (2.0 * init.width * init.width));
        }
      break;
    case InitPreset::Random: {
      std::mt19937 rng(init.seed);
      std::uniform_real_distribution<double> dist(0.0, init.u_max);
      for (double& val : u.data) val = dist(rng);
      break;
    }
  }
  for (double val : u.data)
    if (!(val >= 0.0) || !std::isfinite(val))
      throw std::invalid_argument("make_initial_state: u0 must be nonnegative and finite");

  SimState s;
  s.v = Field::zeros(g);
  switch (init.v0_mode) {
    case V0Mode::Smoothed:
      s.v = implicit_v_step(u, u, init.v0_tau);
      break;
    case V0Mode::Constant:
      if (!(init.v0_value >= 0.0))
        throw std::invalid_argument("make_initial_state: v0 must be nonnegative");
      s.v = Field::constant(g, init.v0_value);
      break;
    case V0Mode::SameAsU:
      s.v = u;
      break;
  }
  s.u = std::move(u);
  s.t = 0.0;
  s.dt = 0.0;
  return s;
}

namespace {

DiagnosticsRecord make_record(const SimState& st, const RunSettings& cfg, double dt) {
  DiagnosticsRecord r;
  r.t = st.t;
  r.mass = integrate(st.u);
  r.linf_u = max_value(st.u);
  for (double p : cfg.lp_list) r.lp_u.push_back(lp_norm(st.u, p));
  r.l2_gradv = grad_lnorm(st.v, 2.0);
  for (double s : cfg.ls_list) r.ls_gradv.push_back(grad_lnorm(st.v, s));
  r.energy_y = energy_y(st.u, st.v, cfg.energy_p, cfg.energy_q);
  r.dt = dt;
  return r;
}

} // namespace

RunResult run(const SimState& initial, const Kinetics& k, const RunSettings& cfg) {
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("run: t_end must be > 0");
  if (!(cfg.record_every > 0.0)) throw std::invalid_argument("run: record_every must be > 0");

  RunResult out;
  out.series.p_list = cfg.lp_list;
  out.series.s_list = cfg.ls_list;
  out.series.energy_p = cfg.energy_p;
  out.series.energy_q = cfg.energy_q;
  out.series.omega_volume = initial.u.grid.volume();

  const std::optional<EnvelopeParams> env = effective_envelope(k);

  SimState state = initial;
  state.dt = 0.0;
  out.min_u_seen = min_value(state.u);
  out.min_v_seen = min_value(state.v);

  auto record = [&](double dt) { out.series.records.push_back(make_record(state, cfg, dt)); };
  record(0.0);

  std::vector<double> pending_snapshots = cfg.snapshot_times;
  std::sort(pending_snapshots.begin(), pending_snapshots.end());
  auto take_snapshots = [&]() {
    while (!pending_snapshots.empty() && state.t >= pending_snapshots.front() - 1e-15) {
      out.snapshots.push_back({state.t, state.u, state.v});
      pending_snapshots.erase(pending_snapshots.begin());
    }
  };
  take_snapshots();

  double linf = max_value(state.u);
  if (linf > cfg.u_cap) {
    out.status = RunStatus::SuspectedBlowup;
    out.blowup_time_estimate = state.t;
    out.t_final = state.t;
    out.final_state = std::move(state);
    return out;
  }

  double next_record = cfg.record_every;
  double linf_prev_record = linf;

  while (state.t < cfg.t_end - 1e-14) {
    double dt = stable_dt(state, k, cfg.sigma, cfg.dt_max);
    dt = std::min(dt, cfg.t_end - state.t);
    state.dt = dt;

    StepResult sr = step(state, k, env);
    if (sr.underflow) {
      out.status = linf > linf_prev_record ? RunStatus::SuspectedBlowup
                                           : RunStatus::StepUnderflow;
      if (out.status == RunStatus::SuspectedBlowup) out.blowup_time_estimate = state.t;
      break;
    }

    ++out.steps;
    out.rejections += sr.rejections;
    out.mass_law_max_rel_err = std::max(out.mass_law_max_rel_err, sr.mass_rel_err);
    if (sr.envelope_checked) {
      const double scale =
          std::max({1.0, std::abs(sr.source_integral), std::abs(sr.envelope_rhs)});
      if (sr.state.dt * sr.source_integral >
          sr.state.dt * sr.envelope_rhs + 1e-12 * scale)
        ++out.dissipation_violations;
    }

    state = std::move(sr.state);
    linf = max_value(state.u);
    out.min_u_seen = std::min(out.min_u_seen, min_value(state.u));
    out.min_v_seen = std::min(out.min_v_seen, min_value(state.v));

    if (linf > cfg.u_cap) {
      record(state.dt);
      take_snapshots();
      out.status = RunStatus::SuspectedBlowup;
      out.blowup_time_estimate = state.t;
      break;
    }

    if (state.t >= next_record - 1e-14) {
      record(state.dt);
      linf_prev_record = linf;
      while (next_record <= state.t + 1e-14) next_record += cfg.record_every;
    }
    take_snapshots();
  }

  if (out.status == RunStatus::Completed &&
      (out.series.records.empty() || out.series.records.back().t < state.t - 1e-14))
    record(state.dt);

  out.t_final = state.t;
  out.final_state = std::move(state);
  return out;
}

} // namespace ks
