#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "landau/fft.hpp"
#include "landau/field.hpp"
#include "landau/grid.hpp"
#include "landau/kernels.hpp"
#include "landau/quadrature.hpp"

namespace landau {

// The nonlocal coefficients abar_ij = a_ij * f, bbar_j = b_j * f, cbar = c * f.
struct CoefficientField {
  VelocityGrid grid;
  double gamma = 0;
  std::array<std::vector<double>, 6> abar;  // xx, yy, zz, xy, xz, yz
  std::array<std::vector<double>, 3> bbar;
  std::vector<double> cbar;

  Sym3 abar_at(std::size_t id) const {
    return Sym3{abar[0][id], abar[1][id], abar[2][id], abar[3][id], abar[4][id], abar[5][id]};
  }
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateFieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double j0s(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}
// j1(x)/x with a series guard against cancellation near 0
inline double j1xs(double x) {
  if (x < 0.1) {
    const double x2 = x * x;
    return 1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0;
  }
  return (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

// Radial pieces of the exact Fourier transforms of the ball-truncated kernels
// (truncation radius R). With Q2 = int r^{g+4} j0(kr) and
// W1 = int r^{g+4} j1(kr)/(kr), both over [0, R]:
//   ahat_ij = delta_ij Aiso + (xi_i xi_j / |xi|^2) Adir,
//   Aiso    = 4pi (Q2 - W1),   Adir = 4pi (3 W1 - Q2)
//   bhat_j  = i xi_j Bw,       Bw   = 8pi W1
//   chat    = -|xi|^2 (Aiso + Adir) = -|xi|^2 Bw
// bhat and chat are derived from ahat through the exact divergence relations
// b = div a and c = div b; this keeps the discrete mass balance and the
// divergence-consistency identities exact at the multiplier level (truncating
// the c kernel independently would break them by a surface term at |w| = R).
struct KernelRadial {
  double aiso = 0, adir = 0, bw = 0;
};

inline KernelRadial kernel_radial(double gamma, double k, double R) {
  const double quarter = (k > 1e-12) ? (M_PI / (2.0 * k)) : R;
  const int panels = std::max(8, static_cast<int>(std::ceil(R / quarter)));
  const double hp = R / panels;
  double q2 = 0, w1 = 0;
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * hp, hw = 0.5 * hp;
    for (int g = 0; g < 8; ++g) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const double r = c + sgn * hw * kGlx[g];
        const double w = kGlw[g] * hw;
        const double rg4 = std::pow(r, gamma + 4.0);
        const double x = k * r;
        q2 += w * rg4 * j0s(x);
        w1 += w * rg4 * j1xs(x);
      }
    }
  }
  KernelRadial out;
  out.aiso = 4.0 * M_PI * (q2 - w1);
  out.adir = 4.0 * M_PI * (3.0 * w1 - q2);
  out.bw = 8.0 * M_PI * w1;
  return out;
}

}  // namespace detail

// Builds abar, bbar, cbar from f by linear (zero-padded) convolution on the
// doubled grid. The kernel side of the product is the exact continuum Fourier
// transform of the kernel truncated to the ball |w| <= 2V (which fits the 4V
// padded torus, so the periodization is exact); pointwise kernel sampling
// would cap the gamma > 0 accuracy at O(h^4) through the |w|^gamma kink.
class Assembler {
 public:
  Assembler(const VelocityGrid& grid, double gamma, double tol_trunc = 0.03)
      : grid_(grid), gamma_(gamma), tol_trunc_(tol_trunc), npad_(2 * grid.n) {
    detail::check_gamma(gamma);
    build_tables();
  }

  const VelocityGrid& grid() const { return grid_; }
  double gamma() const { return gamma_; }
  double tol_trunc() const { return tol_trunc_; }

  CoefficientField assemble(const DistributionField& f) const {
    check_input(f);
    return assemble_unchecked(f);
  }

  // no truncation guard: for instrumentation that convolves kernels with
  // derivative fields (signed, not a density), e.g. the coefficient
  // derivative probes
  CoefficientField assemble_unchecked(const DistributionField& f) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("Assembler: grid mismatch");
    pad_forward(f);
    CoefficientField out = empty_output();
    for (int c = 0; c < 6; ++c) inverse_table(atab_[c], 0, out.abar[c]);
    for (int j = 0; j < 3; ++j) inverse_table(bw_, j + 1, out.bbar[j]);
    inverse_table(ctab_, 0, out.cbar);
    return out;
  }

  // (a * grad f)_i for the divergence form; shares the padded transform
  std::array<std::vector<double>, 3> a_conv_gradient(const DistributionField& f) const {
    check_input(f);
    pad_forward(f);
    std::array<std::vector<double>, 3> out;
    for (int i = 0; i < 3; ++i) inverse_table(asum_, i + 4, out[i]);  // i (aiso+adir) xi_i
    return out;
  }

  // coefficients and (a * grad f) off a single padded transform
  std::pair<CoefficientField, std::array<std::vector<double>, 3>> assemble_with_gradient(
      const DistributionField& f) const {
    check_input(f);
    pad_forward(f);
    CoefficientField coeffs = empty_output();
    for (int c = 0; c < 6; ++c) inverse_table(atab_[c], 0, coeffs.abar[c]);
    for (int j = 0; j < 3; ++j) inverse_table(bw_, j + 1, coeffs.bbar[j]);
    inverse_table(ctab_, 0, coeffs.cbar);
    std::array<std::vector<double>, 3> grad;
    for (int i = 0; i < 3; ++i) inverse_table(asum_, i + 4, grad[i]);
    return {std::move(coeffs), std::move(grad)};
  }


  // Exact for gamma = 0, where a, b, c are quadratic in v and the convolution
  // collapses to five quadrature moments of f. Independent of the transform
  // route; this is the convolution oracle.
  CoefficientField moment_oracle(const DistributionField& f) const {
    if (gamma_ != 0.0)
      throw std::invalid_argument("moment_oracle: only defined for gamma = 0");
    const auto& g = f.grid;
    double M = 0, S = 0;
    Vec3 P{0, 0, 0};
    double Sxx = 0, Syy = 0, Szz = 0, Sxy = 0, Sxz = 0, Syz = 0;
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const double w = f.values[g.idx(i, j, k)];
          const double x = g.node(i), y = g.node(j), z = g.node(k);
          M += w;
          P[0] += w * x;
          P[1] += w * y;
          P[2] += w * z;
          Sxx += w * x * x;
          Syy += w * y * y;
          Szz += w * z * z;
          Sxy += w * x * y;
          Sxz += w * x * z;
          Syz += w * y * z;
        }
    const double h3 = g.h * g.h * g.h;
    M *= h3;
    for (auto& p : P) p *= h3;
    Sxx *= h3; Syy *= h3; Szz *= h3; Sxy *= h3; Sxz *= h3; Syz *= h3;
    S = Sxx + Syy + Szz;

    CoefficientField out = empty_output();
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const std::size_t id = g.idx(i, j, k);
          const double x = g.node(i), y = g.node(j), z = g.node(k);
          const double r2 = x * x + y * y + z * z;
          const double iso = M * r2 - 2.0 * (x * P[0] + y * P[1] + z * P[2]) + S;
          out.abar[0][id] = iso - (M * x * x - 2.0 * x * P[0] + Sxx);
          out.abar[1][id] = iso - (M * y * y - 2.0 * y * P[1] + Syy);
          out.abar[2][id] = iso - (M * z * z - 2.0 * z * P[2] + Szz);
          out.abar[3][id] = -(M * x * y - x * P[1] - y * P[0] + Sxy);
          out.abar[4][id] = -(M * x * z - x * P[2] - z * P[0] + Sxz);
          out.abar[5][id] = -(M * y * z - y * P[2] - z * P[1] + Syz);
          out.bbar[0][id] = -2.0 * (M * x - P[0]);
          out.bbar[1][id] = -2.0 * (M * y - P[1]);
          out.bbar[2][id] = -2.0 * (M * z - P[2]);
          out.cbar[id] = -6.0 * M;
        }
    return out;
  }

 private:
  void check_input(const DistributionField& f) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("Assembler: grid mismatch");
    const double bf = f.boundary_mass_fraction();
    if (bf > tol_trunc_)
      throw TruncationError("assemble: boundary mass fraction " + std::to_string(bf) +
                            " exceeds tol_trunc " + std::to_string(tol_trunc_));
  }

  CoefficientField empty_output() const {
    CoefficientField out;
    out.grid = grid_;
    out.gamma = gamma_;
    for (auto& a : out.abar) a.assign(grid_.size(), 0.0);
    for (auto& b : out.bbar) b.assign(grid_.size(), 0.0);
    out.cbar.assign(grid_.size(), 0.0);
    return out;
  }

  // zero-pad f into the 2n cube and take its half spectrum
  void pad_forward(const DistributionField& f) const {
    const int n = grid_.n, N = npad_;
    pad_.assign(static_cast<std::size_t>(N) * N * N, 0.0);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const double* src = &f.values[grid_.idx(0, j, k)];
        double* dst = &pad_[(static_cast<std::size_t>(k) * N + j) * N];
        for (int i = 0; i < n; ++i) dst[i] = src[i];
      }
    const auto& plans = FftPlans::get(N);
    fhat_.resize(plans.cplx_half_size());
    plans.r2c(pad_.data(), fhat_.data());
  }

  // out = central block of iDFT[table .* fhat] / N^3
  // mode 0: multiply by the real table entry
  // mode 1..3: multiply by i xi_m table entry (m = mode)
  // mode 4..6: multiply by i xi_m table entry (m = mode - 3) -- same thing,
  //            kept distinct so call sites read clearly
  void inverse_table(const std::vector<double>& table, int mode, std::vector<double>& out) const {
    const int N = npad_, nh = N / 2 + 1;
    const auto& plans = FftPlans::get(N);
    work_.resize(fhat_.size());
    const double dxi = M_PI / (2.0 * grid_.half_width);
    std::size_t id = 0;
    for (int k = 0; k < N; ++k) {
      const int m3 = k < N / 2 ? k : k - N;
      for (int j = 0; j < N; ++j) {
        const int m2 = j < N / 2 ? j : j - N;
        for (int ic = 0; ic < nh; ++ic, ++id) {
          if (mode == 0) {
            work_[id] = fhat_[id] * table[id];
          } else {
            const int axis = (mode - 1) % 3;
            const int m = axis == 0 ? ic : (axis == 1 ? m2 : m3);
            const std::complex<double> mult(0.0, dxi * m * table[id]);
            work_[id] = fhat_[id] * mult;
          }
        }
      }
    }
    scratch_.resize(pad_.size());
    plans.c2r(work_.data(), scratch_.data());
    const int n = grid_.n;
    const double scale = 1.0 / static_cast<double>(pad_.size());
    out.assign(grid_.size(), 0.0);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const double* src = &scratch_[(static_cast<std::size_t>(k) * N + j) * N];
        double* dst = &out[grid_.idx(0, j, k)];
        for (int i = 0; i < n; ++i) dst[i] = src[i] * scale;
      }
  }

  void build_tables() {
    const int N = npad_, nh = N / 2 + 1;
    const double dxi = M_PI / (2.0 * grid_.half_width);
    const double R = 2.0 * grid_.half_width;
    const std::size_t sz = static_cast<std::size_t>(N) * N * nh;
    for (auto& t : atab_) t.assign(sz, 0.0);
    bw_.assign(sz, 0.0);
    ctab_.assign(sz, 0.0);
    asum_.assign(sz, 0.0);

    // radial profiles cached by integer |m|^2
    const int m2max = 3 * (N / 2) * (N / 2);
    std::vector<detail::KernelRadial> cache(m2max + 1);
    std::vector<char> have(m2max + 1, 0);

    std::size_t id = 0;
    for (int k = 0; k < N; ++k) {
      const int m3 = k < N / 2 ? k : k - N;
      for (int j = 0; j < N; ++j) {
        const int m2 = j < N / 2 ? j : j - N;
        for (int ic = 0; ic < nh; ++ic, ++id) {
          const int m1 = ic;
          const int mm = m1 * m1 + m2 * m2 + m3 * m3;
          if (!have[mm]) {
            cache[mm] = detail::kernel_radial(gamma_, dxi * std::sqrt(double(mm)), R);
            have[mm] = 1;
          }
          const auto& kr = cache[mm];
          bw_[id] = kr.bw;
          ctab_[id] = -(dxi * dxi * mm) * kr.bw;
          asum_[id] = kr.aiso + kr.adir;
          double e1 = 0, e2 = 0, e3 = 0;
          if (mm > 0) {
            const double inv = 1.0 / mm;
            e1 = m1 * m1 * inv;
            e2 = m2 * m2 * inv;
            e3 = m3 * m3 * inv;
          }
          atab_[0][id] = kr.aiso + kr.adir * e1;
          atab_[1][id] = kr.aiso + kr.adir * e2;
          atab_[2][id] = kr.aiso + kr.adir * e3;
          if (mm > 0) {
            const double inv = 1.0 / mm;
            atab_[3][id] = kr.adir * m1 * m2 * inv;
            atab_[4][id] = kr.adir * m1 * m3 * inv;
            atab_[5][id] = kr.adir * m2 * m3 * inv;
          }
        }
      }
    }
  }

  VelocityGrid grid_;
  double gamma_;
  double tol_trunc_;
  int npad_;
  std::array<std::vector<double>, 6> atab_;  // ahat_xx .. ahat_yz
  std::vector<double> bw_;                   // bhat_j = i xi_j bw
  std::vector<double> ctab_;
  std::vector<double> asum_;                 // aiso + adir, for (a * grad f)
  mutable std::vector<double> pad_, scratch_;
  mutable std::vector<std::complex<double>> fhat_, work_;
};

// ellipticity measurement: Khat = min over scanned nodes of
// lambda_min(abar(v)) / (1 + |v|^2)^{gamma/2}, with the argmin node reported.
// The default scan covers |v| <= V/2; far-corner nodes carry the kernel
// truncation error of the finite domain (weighted by f ~ 0 there), which
// would pollute the measurement without saying anything about ellipticity
// where the dynamics live. ScanRegion::Full is available for sign checks.
enum class ScanRegion { InnerHalf, Full };

struct EllipticityScan {
  double K_hat = 0;
  double lambda_min = 0;            // raw lambda_min at the argmin node
  std::array<int, 3> argmin{0, 0, 0};
  Vec3 argmin_v{0, 0, 0};
};

inline EllipticityScan ellipticity_constant(const CoefficientField& c,
                                            ScanRegion region = ScanRegion::InnerHalf) {
  const auto& g = c.grid;
  const double r2cut = region == ScanRegion::Full
                           ? std::numeric_limits<double>::infinity()
                           : 0.25 * g.half_width * g.half_width;
  EllipticityScan scan;
  bool first = true;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i), y = g.node(j), z = g.node(k);
        if (x * x + y * y + z * z > r2cut) continue;
        const std::size_t id = g.idx(i, j, k);
        const double lmin = sym3_eigenvalues(c.abar_at(id))[0];
        const double w = std::pow(1.0 + x * x + y * y + z * z, c.gamma / 2.0);
        const double val = lmin / w;
        if (first || val < scan.K_hat) {
          first = false;
          scan.K_hat = val;
          scan.lambda_min = lmin;
          scan.argmin = {i, j, k};
          scan.argmin_v = {x, y, z};
        }
      }
  if (!(scan.K_hat > 0))
    throw DegenerateFieldError("ellipticity_constant: K_hat = " + std::to_string(scan.K_hat) +
                               " at node (" + std::to_string(scan.argmin_v[0]) + "," +
                               std::to_string(scan.argmin_v[1]) + "," +
                               std::to_string(scan.argmin_v[2]) + ")");
  return scan;
}

// largest diffusion eigenvalue over the grid, the parabolic stiffness scale
inline double max_diffusion_eigenvalue(const CoefficientField& c) {
  const auto& g = c.grid;
  double lmax = 0;
  for (std::size_t id = 0; id < g.size(); ++id)
    lmax = std::max(lmax, sym3_eigenvalues(c.abar_at(id))[2]);
  return lmax;
}

}  // namespace landau
