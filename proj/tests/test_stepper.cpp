#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ks/exponents.hpp"
#include "ks/stepper.hpp"

using namespace ks;

namespace {

ModelParams make_params(int n, double alpha, double beta, double gamma, double a, double mu) {
  ModelParams p;
  p.n = n;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.a = a;
  p.mu = mu;
  return p;
}

// High-accuracy reference for u' = f(u): classic RK4 with a tiny step.
double rk4_ode(const std::function<double(double)>& f, double u0, double t_end, double dt) {
  double u = u0, t = 0.0;
  while (t < t_end - 1e-15) {
    const double h = std::min(dt, t_end - t);
    const double k1 = f(u);
    const double k2 = f(u + 0.5 * h * k1);
    const double k3 = f(u + 0.5 * h * k2);
    const double k4 = f(u + h * k3);
    u += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
  }
  return u;
}

} // namespace

TEST_CASE("stable_dt: diffusion-limited value and scaling") {
  const Grid g = build_grid_1d(1.0, 64);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0, 1));
  SimState s{Field::zeros(g), Field::zeros(g), 0.0, 0.0};
  const double dt = stable_dt(s, k, 0.4, 1.0);
  const double h = g.h[0];
  CHECK(dt == doctest::Approx(0.4 * h * h / 2.0).epsilon(1e-14));

  // doubling the resolution quarters the diffusion-limited dt
  const Grid g2 = build_grid_1d(1.0, 128);
  SimState s2{Field::zeros(g2), Field::zeros(g2), 0.0, 0.0};
  CHECK(stable_dt(s2, k, 0.4, 1.0) == doctest::Approx(dt / 4.0).epsilon(1e-12));

  CHECK_THROWS_AS(stable_dt(s, k, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("stable_dt: steep v gradients switch to the advective limit") {
  const Grid g = build_grid_1d(1.0, 64);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0, 1));
  Field u = Field::constant(g, 1.0);
  Field v = Field::zeros(g);
  for (int i = 0; i < g.nx(); ++i) v.data[i] = 1000.0 * g.x_center(i); // |grad v| = 1000
  SimState s{u, v, 0.0, 0.0};
  const double dt = stable_dt(s, k, 0.4, 1.0);
  const double h = g.h[0];
  // beta = 1 makes S' constant m2 = 1, so the wave speed is |grad v|
  const double c = k.sensitivity_prime(1.0) * 1000.0;
  CHECK(dt < 0.4 * h * h / 2.0);          // no longer diffusion-limited
  CHECK(dt <= 0.4 * h / c * (1 + 1e-12)); // advective bound honored
}

TEST_CASE("homogeneous equilibrium is a fixed point") {
  const Grid g = build_grid_1d(1.0, 32);
  // f(1) = a - mu = 0 for a = mu = 1
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 1, 1));
  SimState s{Field::constant(g, 1.0), Field::constant(g, 1.0), 0.0, 0.0};
  s.dt = stable_dt(s, k, 0.4, 1e-2);
  const StepResult r = step(s, k);
  CHECK_FALSE(r.underflow);
  for (double u : r.state.u.data) CHECK(u == doctest::Approx(1.0).epsilon(1e-15));
  for (double v : r.state.v.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform logistic run follows the ODE oracle") {
  // u' = 1 - u^2 from u0 = 0; independent RK4 reference
  const Grid g = build_grid_1d(1.0, 16);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 1, 1));
  SimState s{Field::zeros(g), Field::zeros(g), 0.0, 0.0};

  RunSettings cfg;
  cfg.t_end = 5.0;
  cfg.dt_max = 1e-3;
  cfg.record_every = 0.5;
  const RunResult res = run(s, k, cfg);
  REQUIRE(res.status == RunStatus::Completed);

  const double ref = rk4_ode([](double u) { return 1.0 - u * u; }, 0.0, 5.0, 1e-4);
  for (double u : res.final_state.u.data) CHECK(std::abs(u - ref) <= 1e-4);
  CHECK(res.min_u_seen >= 0.0);
  CHECK(res.min_v_seen >= 0.0);
}

TEST_CASE("logistic growth stabilizes at the homogeneous steady state") {
  // f(u) = u - mu u^2 near (1/mu, 1/mu)
  const double mu = 2.0;
  const Grid g = build_grid_1d(1.0, 32);
  const Kinetics k =
      make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0, mu), 1.0);
  SimState s{Field::constant(g, 0.6), Field::constant(g, 0.4), 0.0, 0.0};
  RunSettings cfg;
  cfg.t_end = 40.0;
  cfg.dt_max = 1e-2;
  cfg.record_every = 1.0;
  const RunResult res = run(s, k, cfg);
  REQUIRE(res.status == RunStatus::Completed);
  for (double u : res.final_state.u.data) CHECK(u == doctest::Approx(0.5).epsilon(1e-6));
  for (double v : res.final_state.v.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("pure diffusion conserves mass and positivity") {
  const Grid g = build_grid_1d(1.0, 64);
  Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0, 1));
  k.zero_source = true;
  k.zero_sensitivity = true;

  InitSpec init;
  init.kind = InitPreset::Gaussian;
  init.base = 0.1;
  init.amplitude = 2.0;
  init.width = 0.05;
  SimState s = make_initial_state(g, init);
  const double mass0 = integrate(s.u);

  RunSettings cfg;
  cfg.t_end = 0.5;
  cfg.record_every = 0.05;
  const RunResult res = run(s, k, cfg);
  REQUIRE(res.status == RunStatus::Completed);
  CHECK(std::abs(integrate(res.final_state.u) - mass0) <= 1e-12 * mass0);
  CHECK(res.mass_law_max_rel_err <= 1e-12);
  CHECK(res.min_u_seen >= 0.0);
  CHECK(res.dissipation_violations == 0); // monitor inactive: no envelope
}

TEST_CASE("mass law and dissipation hold along a chemotactic run") {
  const Grid g = build_grid_1d(1.0, 64);
  const Kinetics k =
      make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0.1, 1.0));
  InitSpec init;
  init.kind = InitPreset::Cosine;
  init.base = 0.8;
  init.amplitude = 0.4;
  SimState s = make_initial_state(g, init);

  RunSettings cfg;
  cfg.t_end = 5.0;
  cfg.record_every = 0.1;
  const RunResult res = run(s, k, cfg);
  REQUIRE(res.status == RunStatus::Completed);
  CHECK(res.mass_law_max_rel_err <= 1e-12);
  CHECK(res.dissipation_violations == 0);
  CHECK(res.min_u_seen >= 0.0);
  CHECK(res.min_v_seen >= 0.0);
  // series timestamps strictly increase
  for (std::size_t i = 1; i < res.series.records.size(); ++i)
    CHECK(res.series.records[i].t > res.series.records[i - 1].t);
}

TEST_CASE("covered minimal model with gaussian bump completes and plateaus") {
  // alpha=0, beta=1, gamma=2, a=0, mu=1: decays toward zero, stays bounded
  const Grid g = build_grid_1d(1.0, 48);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0, 1));
  REQUIRE(classify_theorem(k.params).covered);

  InitSpec init;
  init.kind = InitPreset::Gaussian;
  init.base = 0.1;
  init.amplitude = 1.5;
  init.width = 0.08;
  RunSettings cfg;
  cfg.t_end = 20.0;
  cfg.record_every = 0.1;
  const RunResult res = run(make_initial_state(g, init), k, cfg);
  REQUIRE(res.status == RunStatus::Completed);
  double max_linf = 0;
  for (const auto& r : res.series.records) max_linf = std::max(max_linf, r.linf_u);
  CHECK(std::isfinite(max_linf));
  CHECK(classify_boundedness(res.series, res.status) == BoundednessClass::Bounded);
}

TEST_CASE("u_cap crossing reports immediately at the t=0 record") {
  const Grid g = build_grid_1d(1.0, 16);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0, 1));
  SimState s{Field::constant(g, 20.0), Field::constant(g, 20.0), 0.0, 0.0};
  RunSettings cfg;
  cfg.t_end = 1.0;
  cfg.u_cap = 10.0;
  cfg.record_every = 0.1;
  const RunResult res = run(s, k, cfg);
  CHECK(res.status == RunStatus::SuspectedBlowup);
  REQUIRE(res.blowup_time_estimate.has_value());
  CHECK(*res.blowup_time_estimate == 0.0);
  CHECK(res.series.records.size() == 1);
}

TEST_CASE("step underflow surfaces as a status, not an error") {
  const Grid g = build_grid_1d(1.0, 16);
  // mu so large that any representable dt overshoots u below zero
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0, 1e30));
  SimState s{Field::constant(g, 1.0), Field::constant(g, 1.0), 0.0, 0.0};
  RunSettings cfg;
  cfg.t_end = 1.0;
  cfg.record_every = 0.1;
  const RunResult res = run(s, k, cfg);
  CHECK(res.status == RunStatus::StepUnderflow);
}

TEST_CASE("v relaxes geometrically to a frozen constant u") {
  const Grid g = build_grid_1d(1.0, 32);
  const double c = 2.0;
  const Field u = Field::constant(g, c);
  Field v = Field::zeros(g);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (auto& val : v.data) val = U(rng);

  const double dt = 0.05;
  for (double t = 0.0; t < 40.0; t += dt) v = implicit_v_step(v, u, dt);
  for (double val : v.data) CHECK(std::abs(val - c) <= 1e-8);
}

TEST_CASE("2d implicit v solve meets the residual contract") {
  const Grid g = build_grid_2d(1.0, 1.0, 24, 24);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> U(0.0, 3.0);
  Field v = Field::zeros(g), u = Field::zeros(g);
  for (auto& x : v.data) x = U(rng);
  for (auto& x : u.data) x = U(rng);

  const double dt = 2e-3;
  const Field vn = implicit_v_step(v, u, dt);
  const Field lap = laplacian_neumann(vn);
  double rr = 0.0, bb = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    const double b = v.data[c] + dt * u.data[c];
    const double r = b - ((1.0 + dt) * vn.data[c] - dt * lap.data[c]);
    rr += r * r;
    bb += b * b;
  }
  CHECK(std::sqrt(rr) <= 1e-10 * std::sqrt(bb));
  for (double x : vn.data) CHECK(x >= 0.0);
}

TEST_CASE("2d step matches 1d physics on a y-independent state") {
  // same cosine profile evolved as a 1d field and as a y-constant 2d field
  const int n = 32;
  const Grid g1 = build_grid_1d(1.0, n);
  const Grid g2 = build_grid_2d(1.0, 1.0, n, n);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0.1, 1));

  InitSpec init;
  init.kind = InitPreset::Cosine;
  init.base = 1.0;
  init.amplitude = 0.3;
  SimState s1 = make_initial_state(g1, init);
  SimState s2{Field::zeros(g2), Field::zeros(g2), 0.0, 0.0};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      s2.u.data[g2.idx(i, j)] = s1.u.data[i];
      s2.v.data[g2.idx(i, j)] = s1.v.data[i];
    }

  const double dt = 1e-4;
  SimState a = s1, b = s2;
  for (int it = 0; it < 200; ++it) {
    a.dt = dt;
    b.dt = dt;
    a = step(a, k).state;
    b = step(b, k).state;
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      CHECK(b.u.data[g2.idx(i, j)] == doctest::Approx(a.u.data[i]).epsilon(1e-10));
      CHECK(b.v.data[g2.idx(i, j)] == doctest::Approx(a.v.data[i]).epsilon(1e-8));
    }
}

TEST_CASE("identical settings give bitwise-identical series") {
  const Grid g = build_grid_1d(1.0, 48);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, make_params(1, 0, 1, 2, 0.1, 1));
  InitSpec init;
  init.kind = InitPreset::Random;
  init.u_max = 1.0;
  init.seed = 42;
  RunSettings cfg;
  cfg.t_end = 1.0;
  cfg.record_every = 0.1;

  const RunResult r1 = run(make_initial_state(g, init), k, cfg);
  const RunResult r2 = run(make_initial_state(g, init), k, cfg);
  REQUIRE(r1.series.records.size() == r2.series.records.size());
  for (std::size_t i = 0; i < r1.series.records.size(); ++i) {
    CHECK(r1.series.records[i].t == r2.series.records[i].t);
    CHECK(r1.series.records[i].mass == r2.series.records[i].mass);
    CHECK(r1.series.records[i].linf_u == r2.series.records[i].linf_u);
  }
}
