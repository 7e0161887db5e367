#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "landau/fft.hpp"
#include "landau/quadrature.hpp"

namespace landau {

// psi_N = chi * rho_{1/N} * ... * rho_{1/N} (N factors), chi the indicator of
// |v| <= 3/2, rho a fixed C-infinity bump supported in |v| <= 1/2 with unit
// mass, rho_r(v) = r^-3 rho(v/r). Then psi_N = 1 on |v| <= 1, supp psi_N in
// |v| <= 2, and sup |d^lambda psi_N| <= (L N)^{|lambda|} with
// L = max_{|a|<=1} int |d^a rho|.
struct Mollifier {
  int order = 0;        // N
  double h = 0;         // sample spacing
  int points = 0;       // per axis
  double origin = 0;    // coordinate of index 0
  double seed_l = 0;    // L computed from the seed bump
  std::vector<double> values;

  double coord(int i) const { return origin + i * h; }
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * points + j) * points + i;
  }
  double at(double x, double y, double z) const {
    const auto near = [&](double c) {
      return static_cast<int>(std::lround((c - origin) / h));
    };
    const int i = near(x), j = near(y), k = near(z);
    if (i < 0 || j < 0 || k < 0 || i >= points || j >= points || k >= points) return 0.0;
    return values[idx(i, j, k)];
  }
};

namespace detail {

// unnormalized seed profile exp(-1/(1-(2r)^2)) on r < 1/2
inline double seed_profile(double r) {
  const double u = 2.0 * r;
  if (u >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

// radial Gauss-Legendre quadrature of w(r) over [0, 1/2]
template <typename F>
double seed_quadrature(F&& w) {
  double acc = 0;
  const int panels = 64;
  const double hp = 0.5 / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * hp, hw = 0.5 * hp;
    for (int g = 0; g < 8; ++g)
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const double r = c + sgn * hw * kGlx[g];
        acc += kGlw[g] * hw * w(r);
      }
  }
  return acc;
}

}  // namespace detail

// L along with the analytic normalization of the seed: with rho radial and
// decreasing, int |d_1 rho| dv = 2 pi int |rho'(r)| r^2 dr
inline double mollifier_seed_constant() {
  const double mass_raw =
      4.0 * M_PI * detail::seed_quadrature([](double r) {
        return detail::seed_profile(r) * r * r;
      });
  const double grad_raw =
      2.0 * M_PI * detail::seed_quadrature([](double r) {
        const double u = 2.0 * r;
        if (u >= 1.0) return 0.0;
        const double den = 1.0 - u * u;
        const double gp = 8.0 * r / (den * den);  // d/dr of 1/(1-4r^2)
        return detail::seed_profile(r) * gp * r * r;
      });
  return std::max(1.0, grad_raw / mass_raw);
}

// iterated discrete convolution at resolution h, realized as one spectral
// product chi_hat * (h^3 rho_hat)^N on a grid padded past the support sum
inline Mollifier build_mollifier(int n_order, double h) {
  if (n_order < 2) throw std::invalid_argument("build_mollifier: N must be >= 2");
  if (h > 1.0 / (8.0 * n_order))
    throw std::invalid_argument("build_mollifier: resolution too coarse, need h <= 1/(8N)");

  const int half = static_cast<int>(std::ceil(2.25 / h));
  const int pts = 2 * half;
  const double origin = -half * h;
  Mollifier m;
  m.order = n_order;
  m.h = h;
  m.points = pts;
  m.origin = origin;
  m.seed_l = mollifier_seed_constant();

  const auto& plans = FftPlans::get(pts);
  const std::size_t vol = static_cast<std::size_t>(pts) * pts * pts;
  std::vector<double> chi(vol, 0.0);
  std::vector<double> rho(vol, 0.0);
  double rho_sum = 0;
  // chi sits at its physical position; the bump is laid out in wrapped kernel
  // position (center at index 0) so each convolution factor is shift-free
  const auto wrap = [&](int i) { return (i < pts / 2 ? i : i - pts) * h; };
  for (int k = 0; k < pts; ++k)
    for (int j = 0; j < pts; ++j)
      for (int i = 0; i < pts; ++i) {
        const double x = m.coord(i), y = m.coord(j), z = m.coord(k);
        if (x * x + y * y + z * z <= 1.5 * 1.5) chi[m.idx(i, j, k)] = 1.0;
        const double wx = wrap(i), wy = wrap(j), wz = wrap(k);
        const double rb = n_order * std::sqrt(wx * wx + wy * wy + wz * wz);
        const double val = detail::seed_profile(rb);
        rho[m.idx(i, j, k)] = val;
        rho_sum += val;
      }
  // normalize the sampled bump to unit discrete mass
  const double h3 = h * h * h;
  const double scale = 1.0 / (rho_sum * h3);
  for (double& v : rho) v *= scale;

  std::vector<std::complex<double>> chat(plans.cplx_half_size());
  std::vector<std::complex<double>> rhat(plans.cplx_half_size());
  plans.r2c(chi.data(), chat.data());
  plans.r2c(rho.data(), rhat.data());
  const double n3 = static_cast<double>(chi.size());
  for (std::size_t b = 0; b < chat.size(); ++b) {
    std::complex<double> factor(1.0, 0.0);
    const std::complex<double> unit = rhat[b] * h3;
    for (int rep = 0; rep < n_order; ++rep) factor *= unit;
    chat[b] *= factor / n3;
  }
  m.values.assign(chi.size(), 0.0);
  plans.c2r(chat.data(), m.values.data());
  return m;
}

// finite-difference check of sup |d^lambda psi_N| <= (L N)^{|lambda|}, orders
// up to lambda_max, with a 5% discretization allowance
struct MollifierBoundsRow {
  int a1 = 0, a2 = 0, a3 = 0;
  double sup_derivative = 0;
  double bound = 0;  // (L N)^{|lambda|}
  double ratio = 0;
  bool pass = false;
};

struct MollifierBounds {
  int order = 0;
  double seed_l = 0;
  double eps_fd = 0.05;
  std::vector<MollifierBoundsRow> rows;
  bool pass = true;
};

namespace detail {

// central differences along one axis, out of place
inline void fd_axis(const Mollifier& m, const std::vector<double>& in, int axis, int order,
                    std::vector<double>& out) {
  const int n = m.points;
  const double h = m.h;
  out.assign(in.size(), 0.0);
  const auto get = [&](int i, int j, int k) -> double {
    if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n) return 0.0;
    return in[m.idx(i, j, k)];
  };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        auto off = [&](int d) {
          const int ii = i + (axis == 0 ? d : 0);
          const int jj = j + (axis == 1 ? d : 0);
          const int kk = k + (axis == 2 ? d : 0);
          return get(ii, jj, kk);
        };
        double v = 0;
        switch (order) {
          case 0: v = off(0); break;
          case 1: v = (off(1) - off(-1)) / (2 * h); break;
          case 2: v = (off(1) - 2 * off(0) + off(-1)) / (h * h); break;
          case 3:
            v = (off(2) - 2 * off(1) + 2 * off(-1) - off(-2)) / (2 * h * h * h);
            break;
          default:
            throw std::invalid_argument("fd_axis: order > 3 not supported");
        }
        out[m.idx(i, j, k)] = v;
      }
}

}  // namespace detail

inline MollifierBounds verify_mollifier_bounds(const Mollifier& m, int lambda_max) {
  MollifierBounds rep;
  rep.order = m.order;
  rep.seed_l = m.seed_l;
  std::vector<double> a, b;
  for (int total = 0; total <= std::min(lambda_max, 3); ++total) {
    for (int a1 = 0; a1 <= total; ++a1)
      for (int a2 = 0; a2 + a1 <= total; ++a2) {
        const int a3 = total - a1 - a2;
        a = m.values;
        if (a1) detail::fd_axis(m, a, 0, a1, b), a.swap(b);
        if (a2) detail::fd_axis(m, a, 1, a2, b), a.swap(b);
        if (a3) detail::fd_axis(m, a, 2, a3, b), a.swap(b);
        double sup = 0;
        for (double v : a) sup = std::max(sup, std::abs(v));
        MollifierBoundsRow row;
        row.a1 = a1;
        row.a2 = a2;
        row.a3 = a3;
        row.sup_derivative = sup;
        row.bound = std::pow(rep.seed_l * m.order, total);
        row.ratio = sup / row.bound;
        row.pass = row.ratio <= 1.0 + rep.eps_fd;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
      }
  }
  return rep;
}

}  // namespace landau
