#pragma once

#include <cmath>
#include <functional>

namespace ks {

struct ScalarMax {
  double arg = 0;
  double value = 0;
};

// Maximum of g over [0, inf) for functions that eventually decrease
// (g(u) -> -inf as u -> inf). Coarse scan on [0, hi], expanding hi while the
// best sample sits on the right edge, then golden-section refinement.
inline ScalarMax maximize_on_ray(const std::function<double(double)>& g,
                                 double hi = 4.0) {
  constexpr int kSamples = 2048;
  double best_u = 0.0, best_v = g(0.0);
  for (int expand = 0; expand < 60; ++expand) {
    best_u = 0.0;
    best_v = g(0.0);
    for (int i = 1; i <= kSamples; ++i) {
      const double u = hi * i / kSamples;
      const double v = g(u);
      if (v > best_v) {
        best_v = v;
        best_u = u;
      }
    }
    if (best_u < hi * (kSamples - 1.0) / kSamples) break;
    hi *= 4.0;
  }

  double lo = std::max(0.0, best_u - hi / kSamples);
  double up = best_u + hi / kSamples;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = up - phi * (up - lo), x2 = lo + phi * (up - lo);
  double v1 = g(x1), v2 = g(x2);
  while (up - lo > 1e-13 * (1.0 + up)) {
    if (v1 < v2) {
      lo = x1;
      x1 = x2;
      v1 = v2;
      x2 = lo + phi * (up - lo);
      v2 = g(x2);
    } else {
      up = x2;
      x2 = x1;
      v2 = v1;
      x1 = up - phi * (up - lo);
      v1 = g(x1);
    }
  }
  const double mid = 0.5 * (lo + up);
  const double vm = g(mid);
  if (vm >= best_v) return {mid, vm};
  return {best_u, best_v};
}

} // namespace ks
