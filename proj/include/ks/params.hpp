#pragma once

#include <stdexcept>
#include <string>

namespace ks {

// Parameter tuple for the quasilinear chemotaxis system with logistic damping
//
//   u_t = div(D(u) grad u) - div(S(u) grad v) + f(u)
//   v_t = lap v - v + u
//
// subject to the structure conditions
//
//   D(u) >= m1 * (1+u)^(-alpha),  S(u) <= m2 * (1+u)^beta,  S(0) = 0,
//   f(u) <= a - mu * u^gamma,     f(0) >= 0,
//
// with a >= 0, mu > 0, gamma >= 1 and m1, m2 > 0.
struct ModelParams {
  int n = 1;          // spatial dimension, >= 1
  double alpha = 0.0; // diffusion decay exponent
  double beta = 0.0;  // sensitivity growth exponent
  double gamma = 1.0; // damping exponent, >= 1
  double a = 0.0;
  double mu = 1.0;
  double m1 = 1.0;
  double m2 = 1.0;

  void validate() const {
    if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
    if (!(gamma >= 1.0)) throw std::invalid_argument("ModelParams: gamma must be >= 1");
    if (!(mu > 0.0)) throw std::invalid_argument("ModelParams: mu must be > 0");
    if (!(a >= 0.0)) throw std::invalid_argument("ModelParams: a must be >= 0");
    if (!(m1 > 0.0)) throw std::invalid_argument("ModelParams: m1 must be > 0");
    if (!(m2 > 0.0)) throw std::invalid_argument("ModelParams: m2 must be > 0");
  }
};

// Verdict of the coverage test alpha + 2*beta < threshold(gamma, n).
// The threshold is gamma-1+2/n for 1 <= gamma < 2 and gamma-1+4/(n+2)
// for gamma >= 2; coverage is strict.
struct Classification {
  bool covered = false;
  double lhs = 0.0;
  double threshold = 0.0;
  double margin = 0.0; // threshold - lhs; covered <=> margin > 0
};

} // namespace ks
