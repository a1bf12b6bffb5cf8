#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ks/grid.hpp"

using namespace ks;

namespace {

const double kPi = std::acos(-1.0);

ModelParams unit_params(double alpha, double beta) {
  ModelParams p;
  p.n = 1;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = 2.0;
  return p;
}

Field sample_1d(const Grid& g, const std::function<double(double)>& f) {
  Field out = Field::zeros(g);
  for (int i = 0; i < g.nx(); ++i) out.data[i] = f(g.x_center(i));
  return out;
}

double max_abs_diff(const Field& a, const std::function<double(double)>& exact, const Grid& g,
                    int skip_boundary = 0) {
  double m = 0.0;
  for (int i = skip_boundary; i < g.nx() - skip_boundary; ++i)
    m = std::max(m, std::abs(a.data[i] - exact(g.x_center(i))));
  return m;
}

Field random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 2.0);
  Field f = Field::zeros(g);
  for (auto& v : f.data) v = U(rng);
  return f;
}

double field_scale(const Field& f) {
  double m = 1.0;
  for (double v : f.data) m = std::max(m, std::abs(v));
  return m;
}

} // namespace

TEST_CASE("grid construction") {
  const Grid g1 = build_grid_1d(1.0, 64);
  CHECK(g1.h[0] == doctest::Approx(1.0 / 64));
  CHECK(g1.volume() == doctest::Approx(1.0));
  CHECK(g1.cell_volume == doctest::Approx(1.0 / 64));

  const Grid g2 = build_grid_2d(1.0, 1.0, 32, 32);
  CHECK(g2.cell_volume == doctest::Approx(1.0 / 1024));

  const Grid g3 = build_grid_2d(2.0, 1.0, 64, 32);
  CHECK(g3.h[0] == doctest::Approx(1.0 / 32));
  CHECK(g3.h[1] == doctest::Approx(1.0 / 32));

  CHECK_THROWS_AS(build_grid_1d(1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_grid_1d(0.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(3, {1, 1}, {8, 8}), std::invalid_argument);
}

TEST_CASE("integrate: midpoint rule") {
  const Grid g = build_grid_1d(1.0, 64);
  CHECK(integrate(Field::constant(g, 3.0)) == doctest::Approx(3.0).epsilon(1e-15));

  // exact for linear integrands
  const Field lin = sample_1d(g, [](double x) { return x; });
  CHECK(integrate(lin) == 0.5);

  // h^2/12 bound for x^2
  const Field quad = sample_1d(g, [](double x) { return x * x; });
  const double h = g.h[0];
  CHECK(std::abs(integrate(quad) - 1.0 / 3.0) <= h * h / 12.0 * (1 + 1e-12));
}

TEST_CASE("laplacian: constants, convergence, conservativity") {
  const Grid g = build_grid_1d(1.0, 64);
  const Field c = Field::constant(g, 4.2);
  const Field lc = laplacian_neumann(c);
  for (double v : lc.data) CHECK(v == 0.0);

  // 2nd-order convergence on cos(pi x)
  double prev_err = 0.0;
  for (int cells : {32, 64, 128}) {
    const Grid gg = build_grid_1d(1.0, cells);
    const Field f = sample_1d(gg, [](double x) { return std::cos(kPi * x); });
    const Field lap = laplacian_neumann(f);
    double err = 0.0;
    for (int i = 0; i < cells; ++i)
      err = std::max(err, std::abs(lap.data[i] + kPi * kPi * std::cos(kPi * gg.x_center(i))));
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.1));
    prev_err = err;
  }

  // conservativity on random fields
  for (unsigned seed : {1u, 2u, 3u}) {
    const Field f = random_field(g, seed);
    const double scale = field_scale(f);
    CHECK(std::abs(integrate(laplacian_neumann(f))) <= 1e-13 * scale);
  }
}

TEST_CASE("laplacian 2d: product cosine") {
  double prev_err = 0.0;
  for (int cells : {16, 32, 64}) {
    const Grid g = build_grid_2d(1.0, 1.0, cells, cells);
    Field f = Field::zeros(g);
    for (int j = 0; j < cells; ++j)
      for (int i = 0; i < cells; ++i)
        f.data[g.idx(i, j)] = std::cos(kPi * g.x_center(i)) * std::cos(kPi * g.y_center(j));
    const Field lap = laplacian_neumann(f);
    double err = 0.0;
    for (int j = 0; j < cells; ++j)
      for (int i = 0; i < cells; ++i) {
        const double exact = -2.0 * kPi * kPi * std::cos(kPi * g.x_center(i)) *
                             std::cos(kPi * g.y_center(j));
        err = std::max(err, std::abs(lap.data[g.idx(i, j)] - exact));
      }
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.1));
    prev_err = err;
  }
}

TEST_CASE("diffusive divergence: reduction, constants, manufactured solution") {
  const Grid g = build_grid_1d(1.0, 64);
  const Kinetics unit = make_kinetics(KineticsPreset::PowerLaw, unit_params(0, 1));

  // D == 1 reduces bitwise to the laplacian
  const Field u = random_field(g, 5);
  const Field d1 = diffusive_divergence(u, unit);
  const Field lap = laplacian_neumann(u);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(d1.data[i] == lap.data[i]);

  // constant u gives zero for any D
  const Kinetics heavy = make_kinetics(KineticsPreset::PowerLaw, unit_params(-1.3, 1));
  const Field cu = Field::constant(g, 1.7);
  for (double v : diffusive_divergence(cu, heavy).data) CHECK(v == 0.0);

  // alpha = -1: D = 1+u, u = 1 + cos(pi x); second-order convergence to
  // d/dx[(2+cos)(-pi sin)] = -2 pi^2 cos(pi x) - pi^2 cos(2 pi x)
  const Kinetics quasi = make_kinetics(KineticsPreset::PowerLaw, unit_params(-1, 1));
  double prev_err = 0.0;
  for (int cells : {32, 64, 128}) {
    const Grid gg = build_grid_1d(1.0, cells);
    const Field uu = sample_1d(gg, [](double x) { return 1.0 + std::cos(kPi * x); });
    const Field div = diffusive_divergence(uu, quasi);
    const auto exact = [](double x) {
      return -2.0 * kPi * kPi * std::cos(kPi * x) - kPi * kPi * std::cos(2.0 * kPi * x);
    };
    const double err = max_abs_diff(div, exact, gg);
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.1));
    prev_err = err;
  }

  // conservativity
  CHECK(std::abs(integrate(diffusive_divergence(u, heavy))) <= 1e-13 * field_scale(u));
}

TEST_CASE("chemotactic divergence: degenerate inputs and upwind accuracy") {
  const Grid g = build_grid_1d(1.0, 64);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, unit_params(0, 1));

  // constant v: no drift
  const Field u = random_field(g, 9);
  for (double v : chemotactic_divergence(u, Field::constant(g, 2.0), k).data) CHECK(v == 0.0);

  // u == 0: S(0) = 0 kills the flux
  const Field v = sample_1d(g, [](double x) { return std::cos(kPi * x); });
  for (double w : chemotactic_divergence(Field::zeros(g), v, k).data) CHECK(w == 0.0);

  // u == 1 and S(u) = u reproduce the discrete laplacian of v exactly
  const Field ones = Field::constant(g, 1.0);
  const Field chem = chemotactic_divergence(ones, v, k);
  const Field lap = laplacian_neumann(v);
  for (std::size_t i = 0; i < chem.size(); ++i)
    CHECK(chem.data[i] == doctest::Approx(lap.data[i]).epsilon(1e-14));

  // conservativity with nontrivial donor switching
  const Field uu = sample_1d(g, [](double x) { return 2.0 + std::cos(kPi * x); });
  CHECK(std::abs(integrate(chemotactic_divergence(uu, v, k))) <= 1e-13 * field_scale(uu));

  // upwind accuracy: ratio >= 1.8 under doubling against the analytic form
  double prev_err = 0.0;
  for (int cells : {64, 128, 256}) {
    const Grid gg = build_grid_1d(1.0, cells);
    const Field u2 = sample_1d(gg, [](double x) { return 2.0 + std::cos(kPi * x); });
    const Field v2 = sample_1d(gg, [](double x) { return std::cos(kPi * x); });
    const Field div = chemotactic_divergence(u2, v2, k);
    const auto exact = [](double x) {
      return -2.0 * kPi * kPi * std::cos(kPi * x) - kPi * kPi * std::cos(2.0 * kPi * x);
    };
    const double err = max_abs_diff(div, exact, gg);
    if (prev_err > 0.0) CHECK(prev_err / err >= 1.8);
    prev_err = err;
  }
}

TEST_CASE("operators preserve reflection symmetry bitwise") {
  const Grid g = build_grid_1d(1.0, 64);
  const Kinetics k = make_kinetics(KineticsPreset::PowerLaw, unit_params(0.5, 1));

  Field u = Field::zeros(g), v = Field::zeros(g);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> U(0.1, 2.0);
  for (int i = 0; i < 32; ++i) {
    u.data[i] = u.data[63 - i] = U(rng);
    v.data[i] = v.data[63 - i] = U(rng);
  }
  auto mirrored = [](const Field& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f.data[i] != f.data[f.size() - 1 - i]) return false;
    return true;
  };
  CHECK(mirrored(laplacian_neumann(u)));
  CHECK(mirrored(diffusive_divergence(u, k)));
  CHECK(mirrored(chemotactic_divergence(u, v, k)));
}
