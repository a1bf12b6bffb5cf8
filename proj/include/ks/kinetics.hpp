#pragma once

#include <optional>
#include <vector>

#include "ks/params.hpp"

namespace ks {

enum class KineticsPreset { PowerLaw, CubicBistable, Tabulated };

// Concrete (D, S, f) triple satisfying the structure conditions.
//
// PowerLaw (the canonical family; saturates its own envelopes):
//   D(u) = m1 (1+u)^(-alpha)
//   S(u) = m2 u (1+u)^(beta-1)
//   f(u) = a + r u - mu u^gamma        (r = 0 by default)
//
// CubicBistable (D, S as PowerLaw; gamma = 3 recorded):
//   f(u) = u (u - b) (1 - u),  0 < b < 1/2
//
// Tabulated: piecewise-linear interpolation of sampled (D, S, f); intended
// for experiments, not constructible from config files.
//
// zero_source / zero_sensitivity force f == 0 / S == 0 for degenerate test
// configurations (pure diffusion); with zero_source the logistic envelope no
// longer holds and envelope-based monitors are not applicable.
struct Kinetics {
  KineticsPreset preset = KineticsPreset::PowerLaw;
  ModelParams params;
  double r = 0.0;
  double b = 0.25;
  bool zero_source = false;
  bool zero_sensitivity = false;
  std::vector<double> tab_u, tab_d, tab_s, tab_f;

  double diffusivity(double u) const;
  double sensitivity(double u) const;
  double sensitivity_prime(double u) const;
  double source(double u) const;
};

struct KineticsValues {
  double d = 0, s = 0, f = 0;
};

// (D, S, f) at u; negative u from roundoff is clamped to 0, so S(0) = 0
// holds exactly on the closed domain.
KineticsValues evaluate(const Kinetics& k, double u);

Kinetics make_kinetics(KineticsPreset preset, const ModelParams& params,
                       double r = 0.0, double b = 0.25);

Kinetics make_tabulated(const ModelParams& params, std::vector<double> u,
                        std::vector<double> d, std::vector<double> s,
                        std::vector<double> f);

// Envelope triple (a, mu, gamma) with f(u) <= a - mu u^gamma for all u >= 0.
struct EnvelopeParams {
  double a = 0, mu = 1, gamma = 1;
};

// Closed/derived envelope constants:
//   PowerLaw r = 0:          (a, mu, gamma) unchanged
//   PowerLaw r > 0, gamma>1: (a + max(r u - mu/2 u^gamma), mu/2, gamma)
//   PowerLaw r > 0, gamma=1: (a, mu - r, 1), requires r < mu
//   CubicBistable:           (max(f(u) + u^3/2), 1/2, 3)
// Throws std::invalid_argument for unsupported presets and std::domain_error
// when no envelope of the required form exists.
EnvelopeParams envelope_constants(const Kinetics& k);

// Envelope used by run-time monitors; nullopt when the source term escapes
// the logistic form (zero_source, or gamma = 1 with r >= mu).
std::optional<EnvelopeParams> effective_envelope(const Kinetics& k);

// Sampled verification of the three structure conditions on [0, u_max].
// Margins are normalized deficits min over samples of (bound - value)/scale
// with scale = max(1, |bound|, |value|); ok means margin >= -1e-9.
struct EnvelopeReport {
  bool d_ok = false, s_ok = false, f_ok = false;
  double d_margin = 0, s_margin = 0, f_margin = 0;
  double d_worst_u = 0, s_worst_u = 0, f_worst_u = 0;
  int samples = 0;

  bool all_ok() const { return d_ok && s_ok && f_ok; }
};

// Checks f against the given envelope triple.
EnvelopeReport verify_envelopes(const Kinetics& k, const EnvelopeParams& f_env,
                                double u_max, int samples);

// Default f-envelope: the preset's own (a, mu, gamma) for PowerLaw, the
// derived constants for CubicBistable.
EnvelopeReport verify_envelopes(const Kinetics& k, double u_max, int samples);

// u^gamma with fast paths for the common integer exponents.
double pow_gamma(double u, double gamma);

} // namespace ks
