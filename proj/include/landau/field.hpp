#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "landau/fft.hpp"
#include "landau/grid.hpp"
#include "landau/multi_index.hpp"

namespace landau {

// Transform convention (fixed once for the whole artifact):
//   fhat(xi) = integral f(v) exp(-i v.xi) dv        ~ h^3-weighted DFT
//   f(v)    = (2pi)^-3 integral fhat exp(+i v.xi)   ~ inverse DFT / (n h)^3
// With nodes v_i = -V + i h and xi_m = (pi/V) m this gives
//   fhat(xi_m) = h^3 (-1)^(m1+m2+m3) DFT[f]_m.

struct DistributionField {
  VelocityGrid grid;
  std::vector<double> values;

  static DistributionField zero(const VelocityGrid& g) {
    return DistributionField{g, std::vector<double>(g.size(), 0.0)};
  }

  double mass() const {
    double s = 0;
    for (double v : values) s += v;
    return s * grid.h * grid.h * grid.h;
  }

  double min_value() const { return *std::min_element(values.begin(), values.end()); }
  double max_value() const { return *std::max_element(values.begin(), values.end()); }

  // signed mass carried by nodes with |v| > V/2, relative to the total mass;
  // signed so that zero-mean spectral ringing on intermediate fields does not
  // read as escaped mass
  double boundary_mass_fraction() const {
    const int n = grid.n;
    const double r2cut = 0.25 * grid.half_width * grid.half_width;
    double inner = 0, outer = 0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const double x = grid.node(i), y = grid.node(j), z = grid.node(k);
          const double a = values[grid.idx(i, j, k)];
          if (x * x + y * y + z * z > r2cut)
            outer += a;
          else
            inner += a;
        }
    const double tot = inner + outer;
    return tot != 0 ? outer / tot : 0.0;
  }
};

inline double l2_norm(const DistributionField& f) {
  double s = 0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s * f.grid.h * f.grid.h * f.grid.h);
}

// Complex Fourier coefficients on the full n^3 bin grid, stored as the raw
// (unnormalized, unphased) DFT of the nodal values.
struct SpectralField {
  VelocityGrid grid;
  std::vector<std::complex<double>> raw;

  // fhat(xi_m) in the continuum convention
  std::complex<double> coefficient(int b1, int b2, int b3) const {
    const int m1 = grid.signed_bin(b1), m2 = grid.signed_bin(b2), m3 = grid.signed_bin(b3);
    const double h3 = grid.h * grid.h * grid.h;
    const double phase = ((m1 + m2 + m3) & 1) ? -1.0 : 1.0;
    return raw[grid.idx(b1, b2, b3)] * (h3 * phase);
  }
  double coefficient_abs(int b1, int b2, int b3) const {
    const double h3 = grid.h * grid.h * grid.h;
    return std::abs(raw[grid.idx(b1, b2, b3)]) * h3;
  }
  double max_coefficient_abs() const {
    double m = 0;
    for (const auto& c : raw) m = std::max(m, std::abs(c));
    return m * grid.h * grid.h * grid.h;
  }
};

inline SpectralField forward_transform(const DistributionField& f) {
  const auto& plans = FftPlans::get(f.grid.n);
  std::vector<std::complex<double>> in(f.grid.size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = f.values[i];
  SpectralField out{f.grid, std::vector<std::complex<double>>(f.grid.size())};
  plans.fwd(in.data(), out.raw.data());
  return out;
}

inline DistributionField inverse_transform(const SpectralField& s) {
  const auto& plans = FftPlans::get(s.grid.n);
  std::vector<std::complex<double>> in = s.raw;
  std::vector<std::complex<double>> out(s.grid.size());
  plans.bwd(in.data(), out.data());
  DistributionField f = DistributionField::zero(s.grid);
  const double scale = 1.0 / static_cast<double>(s.grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) f.values[i] = out[i].real() * scale;
  return f;
}

// Hermitian half-spectrum (r2c layout, v1-axis halved), the workhorse
// representation for derivatives and Plancherel sums.
struct HalfSpectrum {
  VelocityGrid grid;
  std::vector<std::complex<double>> bins;  // [k][j][ic], ic = 0..n/2
};

inline HalfSpectrum half_spectrum(const DistributionField& f) {
  const auto& plans = FftPlans::get(f.grid.n);
  HalfSpectrum s{f.grid, std::vector<std::complex<double>>(plans.cplx_half_size())};
  std::vector<double> tmp = f.values;
  plans.r2c(tmp.data(), s.bins.data());
  return s;
}

namespace detail {

// visit every r2c bin: fn(flat_index, m1, m2, m3, hermitian_weight)
template <typename F>
void for_each_half_bin(const VelocityGrid& g, F&& fn) {
  const int n = g.n, nh = n / 2 + 1;
  std::size_t id = 0;
  for (int k = 0; k < n; ++k) {
    const int m3 = g.signed_bin(k);
    for (int j = 0; j < n; ++j) {
      const int m2 = g.signed_bin(j);
      for (int ic = 0; ic < nh; ++ic, ++id) {
        const int m1 = ic;  // nonnegative by construction
        const double w = (ic == 0 || ic == n / 2) ? 1.0 : 2.0;
        fn(id, m1, m2, m3, w);
      }
    }
  }
}

inline std::complex<double> i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail

// F^-1[(i xi)^alpha fhat]; exact for band-limited fields. A differentiated
// axis has its Nyquist plane zeroed (for any order, so that
// d^alpha d^beta = d^(alpha+beta) holds exactly and real fields stay real).
inline DistributionField spectral_derivative(const DistributionField& f, const MultiIndex& alpha,
                                             int alpha_max = 12) {
  if (alpha.order() > alpha_max)
    throw std::invalid_argument("spectral_derivative: |alpha| = " +
                                std::to_string(alpha.order()) + " exceeds alpha_max = " +
                                std::to_string(alpha_max));
  if (alpha.order() == 0) return f;
  const auto& plans = FftPlans::get(f.grid.n);
  HalfSpectrum s = half_spectrum(f);
  const double dxi = f.grid.freq_step();
  const int nyq = f.grid.n / 2;
  const std::complex<double> rot = detail::i_power(alpha.order());
  detail::for_each_half_bin(f.grid, [&](std::size_t id, int m1, int m2, int m3, double) {
    if ((alpha.a1 >= 1) && m1 == nyq) { s.bins[id] = 0; return; }
    if ((alpha.a2 >= 1) && m2 == -nyq) { s.bins[id] = 0; return; }
    if ((alpha.a3 >= 1) && m3 == -nyq) { s.bins[id] = 0; return; }
    double amp = 1.0;
    for (int p = 0; p < alpha.a1; ++p) amp *= dxi * m1;
    for (int p = 0; p < alpha.a2; ++p) amp *= dxi * m2;
    for (int p = 0; p < alpha.a3; ++p) amp *= dxi * m3;
    s.bins[id] *= amp * rot;
  });
  DistributionField out = DistributionField::zero(f.grid);
  plans.c2r(s.bins.data(), out.values.data());
  const double scale = 1.0 / static_cast<double>(f.grid.size());
  for (double& v : out.values) v *= scale;
  return out;
}

// || d^alpha f ||_L2 via Plancherel, no inverse transform needed; same
// Nyquist convention as spectral_derivative
inline double derivative_l2_norm(const HalfSpectrum& s, const MultiIndex& alpha) {
  const double dxi = s.grid.freq_step();
  const int nyq = s.grid.n / 2;
  double acc = 0;
  detail::for_each_half_bin(s.grid, [&](std::size_t id, int m1, int m2, int m3, double w) {
    if ((alpha.a1 >= 1) && m1 == nyq) return;
    if ((alpha.a2 >= 1) && m2 == -nyq) return;
    if ((alpha.a3 >= 1) && m3 == -nyq) return;
    double amp = 1.0;
    for (int p = 0; p < alpha.a1; ++p) amp *= dxi * m1;
    for (int p = 0; p < alpha.a2; ++p) amp *= dxi * m2;
    for (int p = 0; p < alpha.a3; ++p) amp *= dxi * m3;
    acc += w * amp * amp * std::norm(s.bins[id]);
  });
  const double n3 = static_cast<double>(s.grid.size());
  const double h3 = s.grid.h * s.grid.h * s.grid.h;
  return std::sqrt(acc * h3 / n3);
}

}  // namespace landau
