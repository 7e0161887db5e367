#pragma once

#include <stdexcept>
#include <vector>

#include "landau/coefficients.hpp"
#include "landau/field.hpp"

namespace landau {

enum class OperatorForm { Divergence, Nondivergence };

struct OperatorOutput {
  VelocityGrid grid;
  OperatorForm form = OperatorForm::Nondivergence;
  std::vector<double> values;

  DistributionField as_field() const { return DistributionField{grid, values}; }
  double mass_moment() const {
    double s = 0;
    for (double v : values) s += v;
    return s * grid.h * grid.h * grid.h;
  }
  double energy_moment() const {
    double s = 0;
    for (int k = 0; k < grid.n; ++k)
      for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i) {
          const double x = grid.node(i), y = grid.node(j), z = grid.node(k);
          s += (x * x + y * y + z * z) * values[grid.idx(i, j, k)];
        }
    return 0.5 * s * grid.h * grid.h * grid.h;
  }
};

// Q(f) = sum_ij abar_ij d2_ij f - cbar f, second derivatives spectral.
// The production path: one coefficient assembly per evaluation.
inline OperatorOutput apply_nondivergence(const DistributionField& f,
                                          const CoefficientField& coeffs) {
  if (!(f.grid == coeffs.grid))
    throw std::invalid_argument("apply_nondivergence: grid mismatch between f and coefficients");
  const auto& g = f.grid;
  const auto& plans = FftPlans::get(g.n);
  HalfSpectrum base = half_spectrum(f);
  const double dxi = g.freq_step();
  const int nyq = g.n / 2;

  OperatorOutput out{g, OperatorForm::Nondivergence, std::vector<double>(g.size(), 0.0)};
  std::vector<std::complex<double>> work(base.bins.size());
  std::vector<double> deriv(g.size());

  struct Pair { int i, j, comp; double weight; };
  const Pair pairs[6] = {{0, 0, 0, 1.0}, {1, 1, 1, 1.0}, {2, 2, 2, 1.0},
                         {0, 1, 3, 2.0}, {0, 2, 4, 2.0}, {1, 2, 5, 2.0}};
  for (const auto& p : pairs) {
    detail::for_each_half_bin(g, [&](std::size_t id, int m1, int m2, int m3, double) {
      const int m[3] = {m1, m2, m3};
      const bool nyq_hit = (m1 == nyq && (p.i == 0 || p.j == 0)) ||
                           (m2 == -nyq && (p.i == 1 || p.j == 1)) ||
                           (m3 == -nyq && (p.i == 2 || p.j == 2));
      if (nyq_hit) {
        work[id] = 0;
        return;
      }
      work[id] = base.bins[id] * (-dxi * dxi * m[p.i] * m[p.j]);
    });
    plans.c2r(work.data(), deriv.data());
    const double scale = 1.0 / static_cast<double>(g.size());
    const auto& a = coeffs.abar[p.comp];
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] += p.weight * a[i] * deriv[i] * scale;
  }
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] -= coeffs.cbar[i] * f.values[i];
  return out;
}

// Q(f) = div( (a*f) grad f - (a*grad f) f ), every convolution through the
// padded transform, the outer divergence spectral. Validation path.
inline OperatorOutput apply_divergence(const DistributionField& f, const Assembler& assembler) {
  const auto& g = f.grid;
  if (!(g == assembler.grid()))
    throw std::invalid_argument("apply_divergence: grid mismatch");
  auto [coeffs, aconv] = assembler.assemble_with_gradient(f);

  std::array<DistributionField, 3> gradf = {spectral_derivative(f, {1, 0, 0}),
                                            spectral_derivative(f, {0, 1, 0}),
                                            spectral_derivative(f, {0, 0, 1})};
  // flux_i = sum_j abar_ij d_j f - (a * grad f)_i f
  const int col[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
  const auto& plans = FftPlans::get(g.n);
  std::vector<std::complex<double>> acc(plans.cplx_half_size(), 0.0);
  std::vector<double> flux(g.size());
  const double dxi = g.freq_step();
  const int nyq = g.n / 2;
  for (int i = 0; i < 3; ++i) {
    for (std::size_t id = 0; id < flux.size(); ++id) {
      flux[id] = coeffs.abar[col[i][0]][id] * gradf[0].values[id] +
                 coeffs.abar[col[i][1]][id] * gradf[1].values[id] +
                 coeffs.abar[col[i][2]][id] * gradf[2].values[id] -
                 aconv[i][id] * f.values[id];
    }
    HalfSpectrum fs{g, std::vector<std::complex<double>>(plans.cplx_half_size())};
    plans.r2c(flux.data(), fs.bins.data());
    detail::for_each_half_bin(g, [&](std::size_t id, int m1, int m2, int m3, double) {
      const int m[3] = {m1, m2, m3};
      const bool nyq_hit = (i == 0 && m1 == nyq) || (i == 1 && m2 == -nyq) ||
                           (i == 2 && m3 == -nyq);
      if (nyq_hit) return;
      acc[id] += fs.bins[id] * std::complex<double>(0.0, dxi * m[i]);
    });
  }
  OperatorOutput out{g, OperatorForm::Divergence, std::vector<double>(g.size())};
  plans.c2r(acc.data(), out.values.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (double& v : out.values) v *= scale;
  return out;
}

// d^mu applied to the nondivergence output; instrumentation for the
// factorial-growth diagnostic
inline DistributionField derivative_of_solution(const DistributionField& f,
                                                const CoefficientField& coeffs,
                                                const MultiIndex& mu, int alpha_max = 12) {
  auto q = apply_nondivergence(f, coeffs);
  return spectral_derivative(q.as_field(), mu, alpha_max);
}

}  // namespace landau
