#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "landau/coefficients.hpp"
#include "landau/field.hpp"
#include "landau/multi_index.hpp"

namespace landau {

struct Functionals {
  double mass = 0, energy = 0, entropy = 0;
};

// mass M = int f, energy E = 1/2 int f |v|^2, entropy H = int f log f.
// Nodes with f below eps_H = 1e-30 max f contribute zero to H (x log x -> 0);
// the entropy floor keeps discrete undershoots from producing NaNs.
inline Functionals functionals(const DistributionField& f) {
  const auto& g = f.grid;
  const double eps_h = 1e-30 * std::max(0.0, f.max_value());
  double m = 0, e = 0, h = 0;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i), y = g.node(j), z = g.node(k);
        const double v = f.values[g.idx(i, j, k)];
        m += v;
        e += v * (x * x + y * y + z * z);
        if (v > eps_h) h += v * std::log(v);
      }
  const double h3 = g.h * g.h * g.h;
  return {m * h3, 0.5 * e * h3, h * h3};
}

// || f ||_{L^p_s} = ( int |f|^p (1+|v|^2)^{s/2} )^{1/p}, p in {1, 2}
inline double weighted_norm(const DistributionField& f, int p, double s) {
  if (p != 1 && p != 2) throw std::invalid_argument("weighted_norm: p must be 1 or 2");
  const auto& g = f.grid;
  double acc = 0;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i), y = g.node(j), z = g.node(k);
        const double w = std::pow(1.0 + x * x + y * y + z * z, s / 2.0);
        const double v = std::abs(f.values[g.idx(i, j, k)]);
        acc += (p == 1 ? v : v * v) * w;
      }
  acc *= g.h * g.h * g.h;
  return p == 1 ? acc : std::sqrt(acc);
}

// || f ||_{H^m_s}^2 = sum_{|alpha| <= m} || d^alpha f ||_{L^2_s}^2
inline double sobolev_norm(const DistributionField& f, int m, double s, int alpha_max = 12) {
  double acc = 0;
  if (s == 0.0) {
    auto hs = half_spectrum(f);
    for (int order = 0; order <= m; ++order)
      for_each_of_order(order, [&](const MultiIndex& a) {
        const double nn = derivative_l2_norm(hs, a);
        acc += nn * nn;
      });
    return std::sqrt(acc);
  }
  for (int order = 0; order <= m; ++order)
    for_each_of_order(order, [&](const MultiIndex& a) {
      const double nn = weighted_norm(spectral_derivative(f, a, alpha_max), 2, s);
      acc += nn * nn;
    });
  return std::sqrt(acc);
}

// || exp(c0 (-lap)^{1/2}) f ||_{L2} = ((2pi)^-3 sum exp(2 c0 |xi|) |fhat|^2 dxi^3)^{1/2},
// evaluated in log space. Returns +inf when the weighted sum exceeds
// (1e3 ||f||_L2)^2: on a finite grid the sum is always finite, so divergence
// is declared by policy once the amplified noise floor dominates.
inline double analytic_norm(const SpectralField& s, double c0) {
  if (c0 < 0) throw std::invalid_argument("analytic_norm: c0 must be nonnegative");
  const auto& g = s.grid;
  const double dxi = g.freq_step();
  double peak = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(s.raw.size());
  for (int b3 = 0; b3 < g.n; ++b3)
    for (int b2 = 0; b2 < g.n; ++b2)
      for (int b1 = 0; b1 < g.n; ++b1) {
        const double a = std::abs(s.raw[g.idx(b1, b2, b3)]);
        if (a == 0) continue;
        const double m1 = g.signed_bin(b1), m2 = g.signed_bin(b2), m3 = g.signed_bin(b3);
        const double xi = dxi * std::sqrt(m1 * m1 + m2 * m2 + m3 * m3);
        const double t = 2.0 * c0 * xi + 2.0 * std::log(a);
        terms.push_back(t);
        peak = std::max(peak, t);
      }
  if (terms.empty()) return 0.0;
  double acc = 0;
  for (double t : terms) acc += std::exp(t - peak);
  // |fhat_phys| = h^3 |raw|; constants collapse to h^3/n^3 as in Plancherel
  const double h3 = g.h * g.h * g.h;
  const double log_norm2 =
      std::log(h3 / static_cast<double>(g.size())) + peak + std::log(acc);
  const double value = std::exp(0.5 * log_norm2);

  // reference L2 norm from the same spectrum (c0 = 0)
  double l2acc = 0;
  for (const auto& c : s.raw) l2acc += std::norm(c);
  const double l2 = std::sqrt(l2acc * h3 / static_cast<double>(g.size()));
  if (value > 1e3 * l2) return std::numeric_limits<double>::infinity();
  return value;
}

struct GevreyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exponential-decay-rate fit of the Fourier shell maxima:
//   log S(r) = b - p log r - c r
// The algebraic prefactor term is what lets a rough datum (power-law tail)
// report c ~ 0 while exp(-c r) data recover c exactly. Window policy: shells
// of width dxi, shell 0 dropped, r capped at 3/4 of the axis Nyquist (the
// outer band is where a pseudo-spectral run parks its aliasing products),
// shells below 1e-12 max|fhat| dropped, window ends at the running minimum
// of S (past it the shells sample the noise floor), at least 8 shells
// required. The shell abscissa is the |xi| of the shell's argmax bin.
struct GevreyFit {
  double c_hat = 0;       // exponential rate (the Gevrey-radius estimate)
  double r2 = 0;          // fit quality on log S
  double prefactor = 0;   // fitted p
  int shells = 0;
  double r_lo = 0, r_hi = 0;
};

inline GevreyFit gevrey_radius(const SpectralField& s) {
  const auto& g = s.grid;
  const double dxi = g.freq_step();
  const int nshell = 3 * g.n / 8 + 1;  // 3/4 of the axis Nyquist
  std::vector<double> smax(nshell, 0.0), rat(nshell, 0.0);
  double peak = 0;
  for (int b3 = 0; b3 < g.n; ++b3)
    for (int b2 = 0; b2 < g.n; ++b2)
      for (int b1 = 0; b1 < g.n; ++b1) {
        const double m1 = g.signed_bin(b1), m2 = g.signed_bin(b2), m3 = g.signed_bin(b3);
        const double r = dxi * std::sqrt(m1 * m1 + m2 * m2 + m3 * m3);
        const int sh = static_cast<int>(r / dxi);
        if (sh >= nshell) continue;  // beyond the axis Nyquist: corner bins
        const double a = std::abs(s.raw[g.idx(b1, b2, b3)]);
        peak = std::max(peak, a);
        if (a > smax[sh]) {
          smax[sh] = a;
          rat[sh] = r;
        }
      }
  const double floor = 1e-12 * peak;
  // a decaying spectrum that meets the discretization noise floor turns flat
  // or rises past its argmin; shells beyond the argmin measure that floor,
  // not the field, so the window ends there (no-op for monotone spectra)
  int last = 0;
  double smin = std::numeric_limits<double>::infinity();
  for (int sh = 1; sh < nshell; ++sh) {
    if (smax[sh] <= 0) continue;
    if (smax[sh] < smin) {
      smin = smax[sh];
      last = sh;
    }
  }
  std::vector<double> xs, ls, rs, ws;
  for (int sh = 1; sh <= last; ++sh) {
    if (smax[sh] <= floor) continue;
    rs.push_back(rat[sh]);
    xs.push_back(std::log(rat[sh]));
    ls.push_back(std::log(smax[sh]));
    // a shell max is estimated from ~shell-population bins; weight accordingly
    ws.push_back(static_cast<double>(sh) * sh);
  }
  if (rs.size() < 8)
    throw GevreyError("gevrey_radius: only " + std::to_string(rs.size()) +
                      " usable shells, need 8");

  // weighted least squares for [b, -p, -c] against columns [1, log r, r]
  double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
  double y1 = 0, y2 = 0, y3 = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double w = ws[i];
    a11 += w;
    a12 += w * xs[i];
    a13 += w * rs[i];
    a22 += w * xs[i] * xs[i];
    a23 += w * xs[i] * rs[i];
    a33 += w * rs[i] * rs[i];
    y1 += w * ls[i];
    y2 += w * ls[i] * xs[i];
    y3 += w * ls[i] * rs[i];
  }
  double m[3][4] = {{a11, a12, a13, y1}, {a12, a22, a23, y2}, {a13, a23, a33, y3}};
  for (int col = 0; col < 3; ++col) {  // gaussian elimination with partial pivot
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || m[col][col] == 0) continue;
      const double fac = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= fac * m[col][c];
    }
  }
  const double b = m[0][3] / m[0][0];
  const double p = -m[1][3] / m[1][1];
  const double c = -m[2][3] / m[2][2];

  double ss_res = 0, ss_tot = 0;
  const double mean = y1 / a11;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double fit = b - p * xs[i] - c * rs[i];
    ss_res += ws[i] * (ls[i] - fit) * (ls[i] - fit);
    ss_tot += ws[i] * (ls[i] - mean) * (ls[i] - mean);
  }
  GevreyFit out;
  out.c_hat = c;
  out.prefactor = p;
  out.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  out.shells = static_cast<int>(rs.size());
  out.r_lo = rs.front();
  out.r_hi = rs.back();
  return out;
}

// D_m = max_{|alpha| = m} ||d^alpha f||_{L2} against the model
// A^{m+1} rho^{-m} (m-2)!, with (-i)! = 1. a_hat is the least A making the
// model dominate every D_m (closed form via the max); the residual is the RMS
// log-slack of the model over the measured D_m.
struct GrowthFit {
  int m_max = 0;
  double rho = 1;
  std::vector<double> d;  // D_m, m = 0..m_max
  double a_hat = 0;
  double residual = 0;
};

inline GrowthFit factorial_growth_fit(const DistributionField& f, int m_max, double rho,
                                      int alpha_max = 12) {
  if (m_max > alpha_max)
    throw std::invalid_argument("factorial_growth_fit: m_max exceeds alpha_max");
  if (!(rho > 0)) throw std::invalid_argument("factorial_growth_fit: rho must be positive");
  auto hs = half_spectrum(f);
  GrowthFit out;
  out.m_max = m_max;
  out.rho = rho;
  out.d.resize(m_max + 1, 0.0);
  for (int m = 0; m <= m_max; ++m) {
    double dm = 0;
    for_each_of_order(m, [&](const MultiIndex& a) {
      dm = std::max(dm, derivative_l2_norm(hs, a));
    });
    out.d[m] = dm;
  }
  double a_hat = 0;
  for (int m = 0; m <= m_max; ++m) {
    if (out.d[m] <= 0) continue;
    const double fac = shifted_factorial(m, 2).to_double();
    const double cand = std::pow(out.d[m] * std::pow(rho, m) / fac, 1.0 / (m + 1));
    a_hat = std::max(a_hat, cand);
  }
  out.a_hat = a_hat;
  double res = 0;
  int cnt = 0;
  for (int m = 0; m <= m_max; ++m) {
    if (out.d[m] <= 0) continue;
    const double fac = shifted_factorial(m, 2).to_double();
    const double slack =
        std::log(a_hat) * (m + 1) - m * std::log(rho) + std::log(fac) - std::log(out.d[m]);
    res += slack * slack;
    ++cnt;
  }
  out.residual = cnt ? std::sqrt(res / cnt) : 0.0;
  return out;
}

// per-snapshot diagnostics row; sobolev entries use weight s = gamma as the
// CSV schema prescribes
struct DiagnosticsRecord {
  double t = 0;
  double mass = 0, energy = 0, entropy = 0;
  double k_hat = 0;
  double undershoot = 0;  // min f over the grid
  std::vector<double> sobolev;       // m = 0..m_max, weight gamma
  std::vector<double> analytic;      // aligned with the configured c0 list
  double gevrey_c = 0, gevrey_r2 = 0;
};

struct RecordOptions {
  double gamma = 0;
  int m_max = 2;
  std::vector<double> c0_list;
  int alpha_max = 12;
};

inline DiagnosticsRecord make_record(double t, const DistributionField& f,
                                     const CoefficientField& coeffs, const RecordOptions& opt) {
  DiagnosticsRecord rec;
  rec.t = t;
  const auto fn = functionals(f);
  rec.mass = fn.mass;
  rec.energy = fn.energy;
  rec.entropy = fn.entropy;
  rec.undershoot = f.min_value();
  rec.k_hat = ellipticity_constant(coeffs).K_hat;
  for (int m = 0; m <= opt.m_max; ++m)
    rec.sobolev.push_back(sobolev_norm(f, m, opt.gamma, opt.alpha_max));
  auto spec = forward_transform(f);
  for (double c0 : opt.c0_list) rec.analytic.push_back(analytic_norm(spec, c0));
  try {
    auto fit = gevrey_radius(spec);
    rec.gevrey_c = fit.c_hat;
    rec.gevrey_r2 = fit.r2;
  } catch (const GevreyError&) {
    rec.gevrey_c = std::numeric_limits<double>::quiet_NaN();
    rec.gevrey_r2 = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

}  // namespace landau
