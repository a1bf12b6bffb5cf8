#include "ks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ks/scalar_max.hpp"

namespace ks {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |grad v| per cell: face gradients averaged to centers, zero at boundary faces.
std::vector<double> grad_magnitude(const Field& v) {
  const Grid& g = v.grid;
  const int nx = g.nx(), ny = g.ny();
  std::vector<double> mag(v.size(), 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.idx(i, j);
      const double gxl = i > 0 ? (v.data[c] - v.data[g.idx(i - 1, j)]) / g.h[0] : 0.0;
      const double gxr = i + 1 < nx ? (v.data[g.idx(i + 1, j)] - v.data[c]) / g.h[0] : 0.0;
      double gx = 0.5 * (gxl + gxr);
      double gy = 0.0;
      if (g.dim == 2) {
        const double gyl = j > 0 ? (v.data[c] - v.data[g.idx(i, j - 1)]) / g.h[1] : 0.0;
        const double gyr = j + 1 < ny ? (v.data[g.idx(i, j + 1)] - v.data[c]) / g.h[1] : 0.0;
        gy = 0.5 * (gyl + gyr);
      }
      mag[c] = g.dim == 1 ? std::abs(gx) : std::hypot(gx, gy);
    }
  }
  return mag;
}

double kahan_integral(const Grid& g, const std::vector<double>& vals) {
  double sum = 0.0, comp = 0.0;
  for (double v : vals) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return g.cell_volume * sum;
}

void fmt_exponent(char* buf, std::size_t n, double v) { std::snprintf(buf, n, "%.6g", v); }

} // namespace

double lp_norm(const Field& u, double p) {
  if (std::isinf(p)) return max_value(u);
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (p == 1.0) return integrate(u);
  std::vector<double> vals(u.size());
  for (std::size_t c = 0; c < u.size(); ++c) vals[c] = pow_gamma(u.data[c], p);
  const double integral = kahan_integral(u.grid, vals);
  return std::pow(integral, 1.0 / p);
}

double grad_lnorm(const Field& v, double s) {
  if (!(s >= 1.0)) throw std::invalid_argument("grad_lnorm: s must be >= 1");
  const auto mag = grad_magnitude(v);
  std::vector<double> vals(mag.size());
  for (std::size_t c = 0; c < mag.size(); ++c) vals[c] = pow_gamma(mag[c], s);
  const double integral = kahan_integral(v.grid, vals);
  return std::pow(integral, 1.0 / s);
}

double energy_y(const Field& u, const Field& v, double p, double q) {
  if (!(p > 1.0) || !(q > 1.0)) throw std::invalid_argument("energy_y: p, q must be > 1");
  // (u+1)^p in log form so near-overflow states report +inf, never NaN.
  double sum_u = 0.0, comp = 0.0;
  for (double uc : u.data) {
    const double lg = p * std::log1p(std::max(uc, 0.0));
    if (lg > 708.0) return kInf;
    const double y = std::exp(lg) - comp;
    const double t = sum_u + y;
    comp = (t - sum_u) - y;
    sum_u = t;
  }
  const auto mag = grad_magnitude(v);
  double sum_g = 0.0;
  comp = 0.0;
  for (double m : mag) {
    double term = 0.0;
    if (m > 0.0) {
      const double lg = 2.0 * q * std::log(m);
      if (lg > 708.0) return kInf;
      term = std::exp(lg);
    }
    const double y = term - comp;
    const double t = sum_g + y;
    comp = (t - sum_g) - y;
    sum_g = t;
  }
  const double vol = u.grid.cell_volume;
  return sum_u * vol / p + sum_g * vol / (2.0 * q);
}

MassOdeReport mass_ode_monitor(const DiagnosticsSeries& series, const EnvelopeParams& env) {
  MassOdeReport rep;
  // locate the lp column carrying integral(u^gamma)
  std::size_t gi = series.p_list.size();
  for (std::size_t i = 0; i < series.p_list.size(); ++i)
    if (std::abs(series.p_list[i] - env.gamma) <= 1e-9) gi = i;
  if (gi == series.p_list.size() || series.records.size() < 2) return rep;

  rep.applicable = true;
  rep.worst_violation = -kInf;
  const double avol = env.a * series.omega_volume;
  auto rhs_at = [&](const DiagnosticsRecord& r) {
    const double int_ug = pow_gamma(r.lp_u[gi], env.gamma);
    return avol - env.mu * int_ug;
  };
  for (std::size_t k = 0; k + 1 < series.records.size(); ++k) {
    const auto& r0 = series.records[k];
    const auto& r1 = series.records[k + 1];
    const double dt = r1.t - r0.t;
    if (!(dt > 0.0)) continue;
    const double rate = (r1.mass - r0.mass) / dt;
    const double rhs0 = rhs_at(r0);
    const double rhs1 = rhs_at(r1);
    const double scale = std::max({1.0, std::abs(r0.mass), std::abs(rhs0)});
    const double slack = 1e-10 * scale + 2.0 * std::abs(rhs1 - rhs0);
    const double excess = rate - rhs0 - slack;
    rep.worst_violation = std::max(rep.worst_violation, excess);
    if (excess > 0.0) ++rep.violations;
  }
  if (rep.worst_violation == -kInf) rep.worst_violation = 0.0;
  return rep;
}

double mass_bound_c1(double gamma) {
  if (gamma == 1.0) return 0.0;
  return std::max(0.0, maximize_on_ray([gamma](double u) { return u - pow_gamma(u, gamma); }).value);
}

MassBoundCheck mass_bound_check(const DiagnosticsSeries& series, const EnvelopeParams& env,
                                double u0_mass) {
  MassBoundCheck chk;
  chk.c1 = mass_bound_c1(env.gamma);
  chk.c2 = std::max(u0_mass, (env.a + chk.c1 * env.mu) * series.omega_volume / env.mu);
  chk.max_violation = -kInf;
  for (const auto& r : series.records)
    chk.max_violation = std::max(chk.max_violation, r.mass - chk.c2);
  if (chk.max_violation == -kInf) chk.max_violation = 0.0;
  chk.ok = chk.max_violation <= 0.02 * chk.c2;
  return chk;
}

bool two_window_plateau(const DiagnosticsSeries& series,
                        const std::function<double(const DiagnosticsRecord&)>& value,
                        const PlateauPolicy& policy) {
  if (series.records.empty()) return false;
  const double T = series.records.back().t;
  double sup1 = -kInf, sup2 = -kInf, peak = 0.0;
  for (const auto& r : series.records) {
    peak = std::max(peak, std::abs(value(r)));
    if (r.t >= policy.early_frac * T && r.t <= policy.mid_frac * T)
      sup1 = std::max(sup1, value(r));
    if (r.t >= policy.mid_frac * T) sup2 = std::max(sup2, value(r));
  }
  if (sup1 == -kInf || sup2 == -kInf) return false;
  return sup2 <= policy.ratio * sup1 + policy.floor_frac * peak;
}

BoundednessClass classify_boundedness(const DiagnosticsSeries& series, RunStatus status,
                                      const PlateauPolicy& policy) {
  if (status == RunStatus::SuspectedBlowup) return BoundednessClass::SuspectedBlowup;
  if (status != RunStatus::Completed) return BoundednessClass::Inconclusive;
  const bool flat =
      two_window_plateau(series, [](const DiagnosticsRecord& r) { return r.linf_u; }, policy);
  return flat ? BoundednessClass::Bounded : BoundednessClass::Inconclusive;
}

const char* to_string(BoundednessClass c) {
  switch (c) {
    case BoundednessClass::Bounded: return "Bounded";
    case BoundednessClass::SuspectedBlowup: return "SuspectedBlowup";
    case BoundednessClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "Completed";
    case RunStatus::SuspectedBlowup: return "SuspectedBlowup";
    case RunStatus::StepUnderflow: return "StepUnderflow";
  }
  return "?";
}

void write_series_csv(const DiagnosticsSeries& series, std::ostream& os) {
  char buf[64];
  os << "t,mass,linf_u";
  for (double p : series.p_list) {
    fmt_exponent(buf, sizeof buf, p);
    os << ",lp_u_p" << buf;
  }
  os << ",l2_gradv";
  for (double s : series.s_list) {
    fmt_exponent(buf, sizeof buf, s);
    os << ",ls_gradv_s" << buf;
  }
  os << ",energy_y,dt\n";

  auto put = [&](double v, bool lead_comma = true) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (lead_comma) os << ',';
    os << buf;
  };
  for (const auto& r : series.records) {
    put(r.t, false);
    put(r.mass);
    put(r.linf_u);
    for (double v : r.lp_u) put(v);
    put(r.l2_gradv);
    for (double v : r.ls_gradv) put(v);
    put(r.energy_y);
    put(r.dt);
    os << '\n';
  }
}

} // namespace ks
