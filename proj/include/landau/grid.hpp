#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace landau {

// Uniform velocity grid on [-V, V)^3, n nodes per axis (power of two), node
// spacing h = 2V/n, so v = 0 is a grid node. Storage is row-major with the
// v1 index fastest: idx = (k*n + j)*n + i for node (v1_i, v2_j, v3_k).
// The discrete Fourier dual has frequencies (pi/V) * m, m in {-n/2..n/2-1}.
struct VelocityGrid {
  int n = 0;
  double half_width = 0;  // V
  double h = 0;

  static VelocityGrid make(int n, double half_width) {
    if (n < 4 || (n & (n - 1)) != 0)
      throw std::invalid_argument("VelocityGrid: n must be a power of two >= 4");
    if (!(half_width > 0)) throw std::invalid_argument("VelocityGrid: half_width must be positive");
    return VelocityGrid{n, half_width, 2.0 * half_width / n};
  }

  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  double node(int i) const { return -half_width + i * h; }
  double freq_step() const { return std::numbers::pi / half_width; }
  int signed_bin(int b) const { return b < n / 2 ? b : b - n; }
  double freq(int b) const { return freq_step() * signed_bin(b); }
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * n + j) * n + i;
  }

  friend bool operator==(const VelocityGrid& a, const VelocityGrid& b) {
    return a.n == b.n && a.half_width == b.half_width;
  }
};

}  // namespace landau
