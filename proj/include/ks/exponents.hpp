#pragma once

#include <stdexcept>
#include <utility>

#include "ks/params.hpp"

namespace ks {

// Raised when the coverage precondition of the feasibility search fails.
struct InfeasibleParamsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an operation is asked for a dimension it is not defined in
// (the (p,q) feasibility search requires n >= 2).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Which a-priori gradient bound the feasibility search leans on:
//   SubQuadratic: |grad v| in L^s with s close to n/(n-1)
//   Quadratic:    |grad v| in L^2 (requires gamma >= 2 for the bound itself)
enum class FeasibilityCase { SubQuadratic, Quadratic };

// Lebesgue-index query (p, q, s). Construction enforces the domain of the
// exponent formulas: p, q, s >= 1, p+gamma-3 > 0, gamma+1-alpha-2*beta > 0
// and q/s > 1/2 - 1/n.
struct ExponentQuery {
  double p = 1.0;
  double q = 1.0;
  double s = 1.0;
  FeasibilityCase kind = FeasibilityCase::Quadratic;

  static ExponentQuery make(double p, double q, double s, FeasibilityCase kind,
                            const ModelParams& params);
};

// The interpolation exponents
//   theta1 = 2(p+gamma-1) / (gamma+1-alpha-2*beta)
//   theta2 = 2(q-1)(p+gamma-1) / (p+gamma-3)
//   kappa_i = (q/s - q/theta_i) / (q/s - (1/2 - 1/n))
//   f_i     = (theta_i/s - 1)   / (q/s - (1/2 - 1/n))  ==  (theta_i/q) kappa_i
struct ExponentCheck {
  double theta1 = 0, theta2 = 0;
  double kappa1 = 0, kappa2 = 0;
  double f1 = 0, f2 = 0;

  bool in_range() const {
    return kappa1 > 0 && kappa1 < 1 && kappa2 > 0 && kappa2 < 1 && f1 < 2 && f2 < 2;
  }
};

// Outcome of the claim "theta > s and q > theta/2 - s/n imply kappa in (0,1)
// and f < 2", together with the two exact equivalences the proof rests on.
struct ClaimOutcome {
  bool premises_hold = false;
  bool kappa_in_01 = false;
  bool f_below_2 = false;
  bool pos_equivalence_holds = false; // (theta > s) <=> (kappa > 0)
  bool lt1_equivalence_holds = false; // (kappa < 1) <=> (q > theta/2 - theta/n)
  double kappa = 0;
  double f = 0;
};

struct FeasibilityReport {
  double p_floor = 0;      // p0 (SubQuadratic) or p0-bar (Quadratic)
  double p_witness = 0;    // deterministic choice, see feasible_pq
  double q_lower = 0;      // open admissible interval at p_witness
  double q_upper = 0;
  double q_witness = 0;    // interval midpoint
  double s_formal = 0;     // n/(n-1) or 2; the interval is derived here
  double s_effective = 0;  // (1-1e-3) * n/(n-1) or 2; checks are run here
  ExponentCheck checks;    // evaluated at (p_witness, q_witness, s_effective)
  bool feasible = false;
};

// Theorem coverage classifier; valid for all n >= 1.
Classification classify_theorem(const ModelParams& params);

// (theta1, theta2). Throws std::domain_error when a denominator is <= 0.
std::pair<double, double> theta_exponents(const ExponentQuery& query,
                                          const ModelParams& params);

// kappa_i and f_i for i = 1,2. Throws std::domain_error when the shared
// denominator is <= 0 or a theta_i is 0.
ExponentCheck kappa_f(const ExponentQuery& query, const ModelParams& params);

// Claim verification for a single theta. Requires q/s > 1/2 - 1/n.
ClaimOutcome claim_check(double theta, double s, double q, int n);

// Deterministic witness search for the feasibility lemma. Requires n >= 2
// (DimensionError otherwise) and the case's coverage precondition
// (InfeasibleParamsError otherwise).
//
// p_floor follows the closed forms
//   SubQuadratic: max{1, 3-g, 2-a-2b, 3n(g+1-a-2b)/(2(n-1)) - (g-1)}
//   Quadratic:    max{1, 3-g, 2-a-2b, (2n+2)(g+1-a-2b)/n - (g-1)}
// with g = gamma, a = alpha, b = beta. The witness is p_floor + 1 with the
// q-interval midpoint; if the interval is empty or the checks fail at
// s_effective, p is doubled (at most 10 times) before giving up.
FeasibilityReport feasible_pq(const ModelParams& params, FeasibilityCase kind);

// Open q-interval of the proof at a given p (at the formal s).
std::pair<double, double> feasible_q_interval(const ModelParams& params,
                                              FeasibilityCase kind, double p);

// ---------------------------------------------------------------------------
// Brute-force oracle: scans a (p, q) lattice and evaluates the four
// conditions kappa_i in (0,1), f_i < 2 straight from the definitions at the
// case's formal s. Used to cross-check feasible_pq.

struct OracleResolution {
  double p_step = 0.5;
  double q_step = 0.01;
  double p_margin = 10.0; // scan p up to p_floor + p_margin
};

struct OracleReport {
  long checked = 0;
  long passing = 0;
  double first_p = 0, first_q = 0; // first passing lattice point
  double min_p = 0, max_p = 0;     // bounding box of the passing set
  double min_q = 0, max_q = 0;

  bool any() const { return passing > 0; }
};

// Direct evaluation of the four conditions at a single (p, q, s); never
// throws (out-of-domain points simply fail).
bool oracle_point_passes(const ModelParams& params, double s, double p, double q);

OracleReport brute_force_feasibility(const ModelParams& params, FeasibilityCase kind,
                                     const OracleResolution& res = {});

// q-sweep of the oracle at fixed p: (passing count, min q, max q).
struct OracleQScan {
  long passing = 0;
  double min_q = 0, max_q = 0;
};
OracleQScan oracle_scan_q(const ModelParams& params, FeasibilityCase kind, double p,
                          double q_step = 0.01);

// Formal s of a case: n/(n-1) for SubQuadratic, 2 for Quadratic.
double formal_s(FeasibilityCase kind, int n);

} // namespace ks
