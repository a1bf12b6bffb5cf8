#include "ks/report.hpp"

#include <cstdio>
#include <ostream>

namespace ks {

namespace {

void kv(std::ostream& os, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << key << '=' << buf << '\n';
}

void kv(std::ostream& os, const char* key, bool v) {
  os << key << '=' << (v ? "true" : "false") << '\n';
}

} // namespace

const char* to_string(FeasibilityCase kind) {
  return kind == FeasibilityCase::SubQuadratic ? "subquadratic" : "quadratic";
}

void print_classification(std::ostream& os, const ModelParams& params,
                          const Classification& c) {
  os << "coverage test at n=" << params.n << ", alpha=" << params.alpha
     << ", beta=" << params.beta << ", gamma=" << params.gamma << ":\n"
     << "  alpha + 2*beta = " << c.lhs << (c.covered ? " < " : " >= ") << c.threshold
     << " (" << (params.gamma < 2.0 ? "gamma < 2 branch" : "gamma >= 2 branch") << ")\n"
     << "  => " << (c.covered ? "covered: global bounded classical solutions" : "not covered")
     << "\n";
  kv(os, "covered", c.covered);
  kv(os, "lhs", c.lhs);
  kv(os, "threshold", c.threshold);
}

void print_feasibility(std::ostream& os, const ModelParams& params, FeasibilityCase kind,
                       const Classification& c, const FeasibilityReport& rep) {
  os << "feasibility witness (" << to_string(kind) << " case, n=" << params.n << "):\n"
     << "  p_floor = " << rep.p_floor << ", witness p = " << rep.p_witness << "\n"
     << "  q in (" << rep.q_lower << ", " << rep.q_upper << "), witness q = " << rep.q_witness
     << "\n"
     << "  s = " << rep.s_effective << " (interval derived at s = " << rep.s_formal << ")\n"
     << "  kappa = (" << rep.checks.kappa1 << ", " << rep.checks.kappa2 << "), f = ("
     << rep.checks.f1 << ", " << rep.checks.f2 << ")\n";
  kv(os, "covered", c.covered);
  kv(os, "lhs", c.lhs);
  kv(os, "threshold", c.threshold);
  kv(os, "p_floor", rep.p_floor);
  kv(os, "p", rep.p_witness);
  kv(os, "q_lower", rep.q_lower);
  kv(os, "q_upper", rep.q_upper);
  kv(os, "q", rep.q_witness);
  kv(os, "s", rep.s_effective);
  kv(os, "theta1", rep.checks.theta1);
  kv(os, "theta2", rep.checks.theta2);
  kv(os, "kappa1", rep.checks.kappa1);
  kv(os, "kappa2", rep.checks.kappa2);
  kv(os, "f1", rep.checks.f1);
  kv(os, "f2", rep.checks.f2);
}

} // namespace ks
