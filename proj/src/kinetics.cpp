#include "ks/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ks/scalar_max.hpp"

namespace ks {

double pow_gamma(double u, double gamma) {
  if (gamma == 1.0) return u;
  if (gamma == 2.0) return u * u;
  if (gamma == 3.0) return u * u * u;
  return std::pow(u, gamma);
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

double interp_slope(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front() || x >= xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  return (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
}

} // namespace

double Kinetics::diffusivity(double u) const {
  u = std::max(u, 0.0);
  if (preset == KineticsPreset::Tabulated) return interp(tab_u, tab_d, u);
  if (params.alpha == 0.0) return params.m1;
  return params.m1 * std::pow(1.0 + u, -params.alpha);
}

double Kinetics::sensitivity(double u) const {
  if (zero_sensitivity) return 0.0;
  u = std::max(u, 0.0);
  if (preset == KineticsPreset::Tabulated) return interp(tab_u, tab_s, u);
  if (params.beta == 1.0) return params.m2 * u;
  return params.m2 * u * std::pow(1.0 + u, params.beta - 1.0);
}

double Kinetics::sensitivity_prime(double u) const {
  if (zero_sensitivity) return 0.0;
  u = std::max(u, 0.0);
  if (preset == KineticsPreset::Tabulated) return interp_slope(tab_u, tab_s, u);
  if (params.beta == 1.0) return params.m2;
  // d/du [m2 u (1+u)^(beta-1)] = m2 (1+u)^(beta-2) (1 + beta u)
  return params.m2 * std::pow(1.0 + u, params.beta - 2.0) * (1.0 + params.beta * u);
}

double Kinetics::source(double u) const {
  if (zero_source) return 0.0;
  u = std::max(u, 0.0);
  switch (preset) {
    case KineticsPreset::PowerLaw:
      return params.a + r * u - params.mu * pow_gamma(u, params.gamma);
    case KineticsPreset::CubicBistable:
      return u * (u - b) * (1.0 - u);
    case KineticsPreset::Tabulated:
      return interp(tab_u, tab_f, u);
  }
  return 0.0;
}

KineticsValues evaluate(const Kinetics& k, double u) {
  u = std::max(u, 0.0);
  return {k.diffusivity(u), k.sensitivity(u), k.source(u)};
}

Kinetics make_kinetics(KineticsPreset preset, const ModelParams& params, double r,
                       double b) {
  params.validate();
  Kinetics k;
  k.preset = preset;
  k.params = params;
  k.r = r;
  k.b = b;
  switch (preset) {
    case KineticsPreset::PowerLaw:
      if (r < 0.0) throw std::invalid_argument("make_kinetics: r must be >= 0");
      break;
    case KineticsPreset::CubicBistable:
      if (!(b > 0.0 && b < 0.5))
        throw std::invalid_argument("make_kinetics: cubic parameter b must be in (0, 1/2)");
      k.params.gamma = 3.0;
      break;
    case KineticsPreset::Tabulated:
      throw std::invalid_argument("make_kinetics: use make_tabulated for tabulated kinetics");
  }
  return k;
}

Kinetics make_tabulated(const ModelParams& params, std::vector<double> u,
                        std::vector<double> d, std::vector<double> s,
                        std::vector<double> f) {
  params.validate();
  if (u.size() < 2 || u.size() != d.size() || u.size() != s.size() || u.size() != f.size())
    throw std::invalid_argument("make_tabulated: need >= 2 samples of equal length");
  if (u.front() != 0.0) throw std::invalid_argument("make_tabulated: samples must start at u = 0");
  if (s.front() != 0.0) throw std::invalid_argument("make_tabulated: S(0) must be 0");
  if (f.front() < 0.0) throw std::invalid_argument("make_tabulated: f(0) must be >= 0");
  for (std::size_t i = 1; i < u.size(); ++i)
    if (!(u[i] > u[i - 1])) throw std::invalid_argument("make_tabulated: u samples must increase");
  for (double di : d)
    if (!(di > 0.0)) throw std::invalid_argument("make_tabulated: D must be > 0");

  Kinetics k;
  k.preset = KineticsPreset::Tabulated;
  k.params = params;
  k.tab_u = std::move(u);
  k.tab_d = std::move(d);
  k.tab_s = std::move(s);
  k.tab_f = std::move(f);
  return k;
}

EnvelopeParams envelope_constants(const Kinetics& k) {
  if (k.zero_source)
    throw std::domain_error("envelope_constants: f == 0 admits no logistic envelope");
  switch (k.preset) {
    case KineticsPreset::PowerLaw: {
      const auto& p = k.params;
      if (k.r == 0.0) return {p.a, p.mu, p.gamma};
      if (p.gamma == 1.0) {
        if (!(k.r < p.mu))
          throw std::domain_error("envelope_constants: gamma = 1 needs r < mu");
        return {p.a, p.mu - k.r, 1.0};
      }
      const double mu_half = 0.5 * p.mu;
      const auto mx = maximize_on_ray(
          [&](double u) { return k.r * u - mu_half * pow_gamma(u, p.gamma); });
      return {p.a + std::max(0.0, mx.value), mu_half, p.gamma};
    }
    case KineticsPreset::CubicBistable: {
      const auto mx = maximize_on_ray(
          [&](double u) { return u * (u - k.b) * (1.0 - u) + 0.5 * u * u * u; });
      return {std::max(0.0, mx.value), 0.5, 3.0};
    }
    case KineticsPreset::Tabulated:
      throw std::invalid_argument("envelope_constants: unsupported preset");
  }
  throw std::invalid_argument("envelope_constants: unsupported preset");
}

std::optional<EnvelopeParams> effective_envelope(const Kinetics& k) {
  try {
    return envelope_constants(k);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

// Tracks the worst normalized margin of an inequality "big >= small".
void track_worst(double big, double small, double u, double& margin, double& worst_u,
                 bool first) {
  const double scale = std::max({1.0, std::abs(big), std::abs(small)});
  const double m = (big - small) / scale;
  if (first || m < margin) {
    margin = m;
    worst_u = u;
  }
}

} // namespace

EnvelopeReport verify_envelopes(const Kinetics& k, const EnvelopeParams& f_env,
                                double u_max, int samples) {
  if (!(u_max > 0.0) || samples < 2)
    throw std::invalid_argument("verify_envelopes: u_max > 0 and samples >= 2 required");

  EnvelopeReport rep;
  rep.samples = samples;
  const auto& p = k.params;
  const double log_span = std::log1p(u_max);
  for (int i = 0; i < samples; ++i) {
    // log1p-spaced sample of [0, u_max]: dense near 0, endpoints exact
    const double u = std::expm1(log_span * i / (samples - 1));
    const auto val = evaluate(k, u);
    track_worst(val.d, p.m1 * std::pow(1.0 + u, -p.alpha), u, rep.d_margin, rep.d_worst_u,
                i == 0);
    track_worst(p.m2 * std::pow(1.0 + u, p.beta), val.s, u, rep.s_margin, rep.s_worst_u,
                i == 0);
    track_worst(f_env.a - f_env.mu * pow_gamma(u, f_env.gamma), val.f, u, rep.f_margin,
                rep.f_worst_u, i == 0);
  }
  rep.d_ok = rep.d_margin >= -1e-9;
  rep.s_ok = rep.s_margin >= -1e-9;
  rep.f_ok = rep.f_margin >= -1e-9;
  return rep;
}

EnvelopeReport verify_envelopes(const Kinetics& k, double u_max, int samples) {
  EnvelopeParams env{k.params.a, k.params.mu, k.params.gamma};
  if (k.preset == KineticsPreset::CubicBistable) env = envelope_constants(k);
  return verify_envelopes(k, env, u_max, samples);
}

} // namespace ks
