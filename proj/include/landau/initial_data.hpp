#pragma once

#include <cmath>
#include <numbers>

#include "landau/field.hpp"
#include "landau/grid.hpp"
#include "landau/kernels.hpp"

namespace landau {

// f = mass * (2 pi T)^{-3/2} exp(-|v - c|^2 / (2T))
inline DistributionField maxwellian_field(const VelocityGrid& g, double mass = 1.0,
                                          double temperature = 1.0, Vec3 center = {0, 0, 0}) {
  DistributionField f = DistributionField::zero(g);
  const double norm = mass * std::pow(2.0 * std::numbers::pi * temperature, -1.5);
  const double inv2t = 0.5 / temperature;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i) - center[0], y = g.node(j) - center[1],
                     z = g.node(k) - center[2];
        f.values[g.idx(i, j, k)] = norm * std::exp(-(x * x + y * y + z * z) * inv2t);
      }
  return f;
}

// two unit-temperature humps at +/- separation/2 along v1
inline DistributionField bi_maxwellian_field(const VelocityGrid& g, double separation,
                                             double w1 = 0.5, double w2 = 0.5) {
  auto f = maxwellian_field(g, w1, 1.0, {separation / 2, 0, 0});
  auto h = maxwellian_field(g, w2, 1.0, {-separation / 2, 0, 0});
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += h.values[i];
  return f;
}

// unit-mass centered Gaussian with per-axis temperatures
inline DistributionField anisotropic_gaussian_field(const VelocityGrid& g, double t1, double t2,
                                                    double t3) {
  DistributionField f = DistributionField::zero(g);
  const double norm = std::pow(2.0 * std::numbers::pi, -1.5) / std::sqrt(t1 * t2 * t3);
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i), y = g.node(j), z = g.node(k);
        f.values[g.idx(i, j, k)] =
            norm * std::exp(-0.5 * (x * x / t1 + y * y / t2 + z * z / t3));
      }
  return f;
}

// rough datum: radial indicator of |v| <= radius with a C^4 smoothstep edge
// of half-width edge_width, normalized to unit mass on the grid. Finite
// regularity means an algebraically decaying Fourier tail (~ |xi|^-7.5), the
// "rather weak" starting point of the smoothing-effect runs, while the edge
// itself stays resolvable so the transient does not alias.
inline DistributionField smoothed_indicator_field(const VelocityGrid& g, double radius,
                                                  double edge_width) {
  DistributionField f = DistributionField::zero(g);
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i), y = g.node(j), z = g.node(k);
        const double r = std::sqrt(x * x + y * y + z * z);
        double val = 0;
        if (r <= radius - edge_width) {
          val = 1;
        } else if (r < radius + edge_width) {
          const double u = (r - (radius - edge_width)) / (2 * edge_width);
          const double u2 = u * u;
          // C^4 smoothstep 70u^9 - 315u^8 + 540u^7 - 420u^6 + 126u^5
          val = 1 - u2 * u2 * u * (126 + u * (-420 + u * (540 + u * (-315 + u * 70))));
        }
        f.values[g.idx(i, j, k)] = val;
      }
  const double m = f.mass();
  for (double& v : f.values) v /= m;
  return f;
}

}  // namespace landau
