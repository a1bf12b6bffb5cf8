#include "ks/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ks {

namespace {

double coverage_threshold(const ModelParams& p, FeasibilityCase kind) {
  // Precondition of the feasibility lemma, per case (not per gamma branch).
  if (kind == FeasibilityCase::SubQuadratic) return p.gamma - 1.0 + 2.0 / p.n;
  return p.gamma - 1.0 + 4.0 / (p.n + 2.0);
}

double p_floor_of(const ModelParams& pr, FeasibilityCase kind) {
  const double g = pr.gamma, al = pr.alpha, be = pr.beta;
  const double n = pr.n;
  const double c = g + 1.0 - al - 2.0 * be;
  double last;
  if (kind == FeasibilityCase::SubQuadratic) {
    last = 3.0 * n * c / (2.0 * (n - 1.0)) - (g - 1.0);
  } else {
    last = (2.0 * n + 2.0) * c / n - (g - 1.0);
  }
  return std::max({1.0, 3.0 - g, 2.0 - al - 2.0 * be, last});
}

} // namespace

double formal_s(FeasibilityCase kind, int n) {
  if (kind == FeasibilityCase::SubQuadratic) return n / (n - 1.0);
  return 2.0;
}

ExponentQuery ExponentQuery::make(double p, double q, double s, FeasibilityCase kind,
                                  const ModelParams& params) {
  params.validate();
  if (!(p >= 1.0) || !(q >= 1.0) || !(s >= 1.0))
    throw std::invalid_argument("ExponentQuery: p, q, s must be >= 1");
  if (!(p + params.gamma - 3.0 > 0.0))
    throw std::invalid_argument("ExponentQuery: p + gamma - 3 must be > 0");
  if (!(params.gamma + 1.0 - params.alpha - 2.0 * params.beta > 0.0))
    throw std::invalid_argument("ExponentQuery: gamma + 1 - alpha - 2*beta must be > 0");
  if (!(q / s > 0.5 - 1.0 / params.n))
    throw std::invalid_argument("ExponentQuery: q/s must exceed 1/2 - 1/n");
  return ExponentQuery{p, q, s, kind};
}

Classification classify_theorem(const ModelParams& params) {
  params.validate();
  Classification c;
  c.lhs = params.alpha + 2.0 * params.beta;
  c.threshold = (params.gamma < 2.0) ? params.gamma - 1.0 + 2.0 / params.n
                                     : params.gamma - 1.0 + 4.0 / (params.n + 2.0);
  c.margin = c.threshold - c.lhs;
  c.covered = c.lhs < c.threshold;
  return c;
}

std::pair<double, double> theta_exponents(const ExponentQuery& query,
                                          const ModelParams& params) {
  const double d1 = params.gamma + 1.0 - params.alpha - 2.0 * params.beta;
  const double d2 = query.p + params.gamma - 3.0;
  if (!(d1 > 0.0)) throw std::domain_error("theta1: gamma + 1 - alpha - 2*beta <= 0");
  if (!(d2 > 0.0)) throw std::domain_error("theta2: p + gamma - 3 <= 0");
  const double theta1 = 2.0 * (query.p + params.gamma - 1.0) / d1;
  const double theta2 = 2.0 * (query.q - 1.0) * (query.p + params.gamma - 1.0) / d2;
  return {theta1, theta2};
}

ExponentCheck kappa_f(const ExponentQuery& query, const ModelParams& params) {
  const auto [theta1, theta2] = theta_exponents(query, params);
  const double denom = query.q / query.s - (0.5 - 1.0 / params.n);
  if (!(denom > 0.0)) throw std::domain_error("kappa_f: q/s - (1/2 - 1/n) <= 0");
  if (theta1 == 0.0 || theta2 == 0.0) throw std::domain_error("kappa_f: theta_i is 0");

  ExponentCheck c;
  c.theta1 = theta1;
  c.theta2 = theta2;
  c.kappa1 = (query.q / query.s - query.q / theta1) / denom;
  c.kappa2 = (query.q / query.s - query.q / theta2) / denom;
  c.f1 = (theta1 / query.s - 1.0) / denom;
  c.f2 = (theta2 / query.s - 1.0) / denom;
  return c;
}

ClaimOutcome claim_check(double theta, double s, double q, int n) {
  const double denom = q / s - (0.5 - 1.0 / n);
  if (!(denom > 0.0)) throw std::domain_error("claim_check: q/s - (1/2 - 1/n) <= 0");
  if (theta == 0.0) throw std::domain_error("claim_check: theta is 0");

  ClaimOutcome out;
  out.kappa = (q / s - q / theta) / denom;
  out.f = (theta / s - 1.0) / denom;
  out.premises_hold = theta > s && q > theta / 2.0 - s / n;
  out.kappa_in_01 = out.kappa > 0.0 && out.kappa < 1.0;
  out.f_below_2 = out.f < 2.0;
  out.pos_equivalence_holds = (theta > s) == (out.kappa > 0.0);
  out.lt1_equivalence_holds = (out.kappa < 1.0) == (q > theta / 2.0 - theta / n);
  return out;
}

std::pair<double, double> feasible_q_interval(const ModelParams& params,
                                              FeasibilityCase kind, double p) {
  const double g = params.gamma, c = g + 1.0 - params.alpha - 2.0 * params.beta;
  const double n = params.n;
  double lower, upper;
  if (kind == FeasibilityCase::SubQuadratic) {
    const double w = n / (2.0 * (n - 1.0));
    lower = std::max(w + 1.0, (p + g - 1.0) / c - 1.0 / (n - 1.0));
    upper = w * p + w * (g - 1.0) - 1.0 / (n - 1.0);
  } else {
    const double w = (n + 2.0) / (2.0 * n);
    lower = std::max(2.0, (p + g - 1.0) / c - 2.0 / n);
    upper = w * p + w * (g - 1.0) - 2.0 / n;
  }
  return {lower, upper};
}

FeasibilityReport feasible_pq(const ModelParams& params, FeasibilityCase kind) {
  params.validate();
  if (params.n < 2) throw DimensionError("feasible_pq: requires n >= 2");
  const double lhs = params.alpha + 2.0 * params.beta;
  const double thr = coverage_threshold(params, kind);
  if (!(lhs < thr))
    throw InfeasibleParamsError("feasible_pq: alpha + 2*beta >= case threshold");

  FeasibilityReport rep;
  rep.p_floor = p_floor_of(params, kind);
  rep.s_formal = formal_s(kind, params.n);
  rep.s_effective = (kind == FeasibilityCase::SubQuadratic)
                        ? (1.0 - 1e-3) * rep.s_formal
                        : 2.0;

  // The lemma guarantees a q for every p > p_floor; the doubling loop guards
  // rounding at razor-thin coverage margins and the shift to s_effective.
  double p = rep.p_floor + 1.0;
  for (int attempt = 0; attempt <= 10; ++attempt, p *= 2.0) {
    const auto [lo, hi] = feasible_q_interval(params, kind, p);
    if (!(lo < hi)) continue;
    const double q = 0.5 * (lo + hi);
    ExponentCheck chk;
    try {
      chk = kappa_f(ExponentQuery::make(p, q, rep.s_effective, kind, params), params);
    } catch (const std::exception&) {
      continue;
    }
    if (!chk.in_range()) continue;
    rep.p_witness = p;
    rep.q_lower = lo;
    rep.q_upper = hi;
    rep.q_witness = q;
    rep.checks = chk;
    rep.feasible = true;
    return rep;
  }
  throw InfeasibleParamsError("feasible_pq: no admissible (p, q) found");
}

bool oracle_point_passes(const ModelParams& params, double s, double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0) || !(s >= 1.0)) return false;
  const double d1 = params.gamma + 1.0 - params.alpha - 2.0 * params.beta;
  const double d2 = p + params.gamma - 3.0;
  if (!(d1 > 0.0) || !(d2 > 0.0)) return false;
  const double theta1 = 2.0 * (p + params.gamma - 1.0) / d1;
  const double theta2 = 2.0 * (q - 1.0) * (p + params.gamma - 1.0) / d2;
  const double denom = q / s - (0.5 - 1.0 / params.n);
  if (!(denom > 0.0) || !(theta1 > 0.0) || !(theta2 > 0.0)) return false;
  for (double theta : {theta1, theta2}) {
    const double kappa = (q / s - q / theta) / denom;
    const double f = (theta / s - 1.0) / denom;
    if (!(kappa > 0.0 && kappa < 1.0 && f < 2.0)) return false;
  }
  return true;
}

OracleReport brute_force_feasibility(const ModelParams& params, FeasibilityCase kind,
                                     const OracleResolution& res) {
  params.validate();
  if (params.n < 2) throw DimensionError("brute_force_feasibility: requires n >= 2");

  const double s = formal_s(kind, params.n);
  const double p_hi = p_floor_of(params, kind) + res.p_margin;

  OracleReport rep;
  rep.min_p = rep.min_q = std::numeric_limits<double>::infinity();
  rep.max_p = rep.max_q = -std::numeric_limits<double>::infinity();

  for (long i = 1; i * res.p_step <= p_hi; ++i) {
    const double p = i * res.p_step;
    if (p < 1.0 || !(p + params.gamma - 3.0 > 0.0)) continue;
    const double q_hi = std::max(2.0, feasible_q_interval(params, kind, p).second) + 1.0;
    for (long j = 1; j * res.q_step <= q_hi; ++j) {
      const double q = j * res.q_step;
      if (q < 1.0) continue;
      ++rep.checked;
      if (!oracle_point_passes(params, s, p, q)) continue;
      if (rep.passing == 0) {
        rep.first_p = p;
        rep.first_q = q;
      }
      ++rep.passing;
      rep.min_p = std::min(rep.min_p, p);
      rep.max_p = std::max(rep.max_p, p);
      rep.min_q = std::min(rep.min_q, q);
      rep.max_q = std::max(rep.max_q, q);
    }
  }
  return rep;
}

OracleQScan oracle_scan_q(const ModelParams& params, FeasibilityCase kind, double p,
                          double q_step) {
  const double s = formal_s(kind, params.n);
  const double q_hi = std::max(2.0, feasible_q_interval(params, kind, p).second) + 1.0;
  OracleQScan scan;
  scan.min_q = std::numeric_limits<double>::infinity();
  scan.max_q = -std::numeric_limits<double>::infinity();
  for (long j = 1; j * q_step <= q_hi; ++j) {
    const double q = j * q_step;
    if (q < 1.0 || !oracle_point_passes(params, s, p, q)) continue;
    ++scan.passing;
    scan.min_q = std::min(scan.min_q, q);
    scan.max_q = std::max(scan.max_q, q);
  }
  return scan;
}

} // namespace ks
