#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "ks/grid.hpp"
#include "ks/kinetics.hpp"

namespace ks {

enum class RunStatus { Completed, SuspectedBlowup, StepUnderflow };

struct DiagnosticsRecord {
  double t = 0;
  double mass = 0;   // integral of u
  double linf_u = 0;
  std::vector<double> lp_u;      // one entry per configured p
  double l2_gradv = 0;
  std::vector<double> ls_gradv;  // one entry per configured s
  double energy_y = 0;
  double dt = 0;
};

struct DiagnosticsSeries {
  std::vector<double> p_list;  // exponents for the lp_u columns
  std::vector<double> s_list;  // exponents for the ls_gradv columns
  double energy_p = 2.0, energy_q = 2.0;
  double omega_volume = 0.0;
  std::vector<DiagnosticsRecord> records;
};

// (integral of u^p)^(1/p); p = inf is the cellwise max.
double lp_norm(const Field& u, double p);

// (integral of |grad v|^s)^(1/s) with face gradients averaged to cells.
double grad_lnorm(const Field& v, double s);

// (1/p) integral (u+1)^p + (1/2q) integral |grad v|^(2q); +inf on overflow.
double energy_y(const Field& u, const Field& v, double p, double q);

// Discrete check of the mass inequality d/dt integral(u) <= a|Omega| -
// mu integral(u^gamma) along record pairs, with 1e-10 scale slack plus a
// first-order term for the drift of the right-hand side between records.
// Needs env.gamma in the series p_list; not applicable otherwise.
struct MassOdeReport {
  bool applicable = false;
  long violations = 0;
  double worst_violation = 0; // most positive excess over slack
};
MassOdeReport mass_ode_monitor(const DiagnosticsSeries& series, const EnvelopeParams& env);

// C1 = max_{u>=0}(u - u^gamma), C2 = max{mass(u0), (a + C1 mu)|Omega|/mu};
// ok iff every recorded mass stays below (1 + 2%) C2.
struct MassBoundCheck {
  double c1 = 0;
  double c2 = 0;
  double max_violation = 0; // max over records of mass - c2
  bool ok = false;
};
MassBoundCheck mass_bound_check(const DiagnosticsSeries& series, const EnvelopeParams& env,
                                double u0_mass);

double mass_bound_c1(double gamma);

enum class BoundednessClass { Bounded, SuspectedBlowup, Inconclusive };

// Two-window plateau policy: sup over [T/2, T] at most `ratio` times the sup
// over [T/4, T/2], plus a floor of floor_frac times the whole-series peak so
// that quantities which have decayed to roundoff dust compare as equal.
struct PlateauPolicy {
  double ratio = 1.05;
  double early_frac = 0.25;
  double mid_frac = 0.5;
  double floor_frac = 1e-9;
};

bool two_window_plateau(const DiagnosticsSeries& series,
                        const std::function<double(const DiagnosticsRecord&)>& value,
                        const PlateauPolicy& policy = {});

BoundednessClass classify_boundedness(const DiagnosticsSeries& series, RunStatus status,
                                      const PlateauPolicy& policy = {});

const char* to_string(BoundednessClass c);
const char* to_string(RunStatus s);

// CSV with header t,mass,linf_u,lp_u,l2_gradv,ls_gradv,energy_y,dt where the
// lp_u / ls_gradv columns repeat per configured exponent with _p<val> /
// _s<val> suffixes. 17 significant digits.
void write_series_csv(const DiagnosticsSeries& series, std::ostream& os);

} // namespace ks
