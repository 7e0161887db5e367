#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace landau {

using Vec3 = std::array<double, 3>;

// symmetric 3x3, component order xx, yy, zz, xy, xz, yz
struct Sym3 {
  double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;

  Vec3 apply(const Vec3& v) const {
    return {xx * v[0] + xy * v[1] + xz * v[2], xy * v[0] + yy * v[1] + yz * v[2],
            xz * v[0] + yz * v[1] + zz * v[2]};
  }
  double trace() const { return xx + yy + zz; }
};

// eigenvalues of a symmetric 3x3, ascending (trigonometric closed form)
inline std::array<double, 3> sym3_eigenvalues(const Sym3& a) {
  const double q = a.trace() / 3.0;
  const double dxx = a.xx - q, dyy = a.yy - q, dzz = a.zz - q;
  const double p2 =
      dxx * dxx + dyy * dyy + dzz * dzz + 2.0 * (a.xy * a.xy + a.xz * a.xz + a.yz * a.yz);
  if (p2 <= 0) return {q, q, q};
  const double p = std::sqrt(p2 / 6.0);
  const double bxx = dxx / p, byy = dyy / p, bzz = dzz / p;
  const double bxy = a.xy / p, bxz = a.xz / p, byz = a.yz / p;
  const double detb = bxx * (byy * bzz - byz * byz) - bxy * (bxy * bzz - byz * bxz) +
                      bxz * (bxy * byz - byy * bxz);
  double r = detb / 2.0;
  r = std::min(1.0, std::max(-1.0, r));
  const double phi = std::acos(r) / 3.0;
  const double l1 = q + 2.0 * p * std::cos(phi);
  const double l3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  const double l2 = 3.0 * q - l1 - l3;
  return {l3, l2, l1};
}

namespace detail {
inline void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1], got " + std::to_string(gamma));
}
}  // namespace detail

// a_ij(v) = (delta_ij - v_i v_j / |v|^2) |v|^{gamma+2}; the projector kills v
// exactly, and the continuous limit at v = 0 is the zero matrix
inline Sym3 kernel_a(const Vec3& v, double gamma) {
  detail::check_gamma(gamma);
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  if (r2 == 0.0) return {};
  const double s = std::pow(r2, gamma / 2.0);  // |v|^gamma
  Sym3 m;
  m.xx = s * (r2 - v[0] * v[0]);
  m.yy = s * (r2 - v[1] * v[1]);
  m.zz = s * (r2 - v[2] * v[2]);
  m.xy = -s * v[0] * v[1];
  m.xz = -s * v[0] * v[2];
  m.yz = -s * v[1] * v[2];
  return m;
}

// b_j(v) = sum_i d_i a_ij = -2 |v|^gamma v_j
inline Vec3 kernel_b(const Vec3& v, double gamma) {
  detail::check_gamma(gamma);
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  if (r2 == 0.0) return {0, 0, 0};
  const double s = -2.0 * std::pow(r2, gamma / 2.0);
  return {s * v[0], s * v[1], s * v[2]};
}

// c(v) = sum_ij d_i d_j a_ij = -2 (gamma+3) |v|^gamma; constant -6 for gamma=0
inline double kernel_c(const Vec3& v, double gamma) {
  detail::check_gamma(gamma);
  if (gamma == 0.0) return -6.0;
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  if (r2 == 0.0) return 0.0;
  return -2.0 * (gamma + 3.0) * std::pow(r2, gamma / 2.0);
}

}  // namespace landau
