#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "landau/multi_index.hpp"
#include "landau/rational.hpp"

namespace landau {

// The two combinatorial sums bounded by 24:
//   SUM1: sum over beta of |mu| / (|beta|^4 (|mu|-|beta|))
//   SUM2: sum over beta of |mu| / (|beta|^3 (|mu|-|beta|)^2)
// RESTRICTED sums over beta <= mu with 1 <= |beta| <= |mu|-1 (the paper's
// summation convention); SHELL relaxes to all beta in N^3 per shell, which is
// the majorant used in the proof. Both are computed in exact rational
// arithmetic; the summand depends on beta only through |beta|, so both modes
// reduce to per-shell counts.

enum class Lemma21Variant { SUM1, SUM2 };
enum class Lemma21Mode { RESTRICTED, SHELL };

inline BigRational lemma21_sum(const MultiIndex& mu, Lemma21Variant variant, Lemma21Mode mode) {
  const long m = mu.order();
  if (m < 2) throw std::invalid_argument("lemma21_sum: requires |mu| >= 2, got " + mu.str());
  std::vector<std::int64_t> counts;
  if (mode == Lemma21Mode::RESTRICTED) counts = shell_counts_below(mu);
  BigRational acc;
  for (long l = 1; l <= m - 1; ++l) {
    const std::int64_t cnt =
        (mode == Lemma21Mode::SHELL) ? shell_count(l) : counts[static_cast<std::size_t>(l)];
    if (cnt == 0) continue;
    BigInt num(static_cast<unsigned long>(cnt));
    num *= static_cast<unsigned long>(m);
    BigInt den = (variant == Lemma21Variant::SUM1)
                     ? BigInt::pow(static_cast<unsigned long>(l), 4) *
                           static_cast<unsigned long>(m - l)
                     : BigInt::pow(static_cast<unsigned long>(l), 3) *
                           (BigInt::pow(static_cast<unsigned long>(m - l), 2));
    acc += BigRational(num, den);
  }
  return acc;
}

// Exact shell-mode sweep over m = |mu|. Per-term rational accumulation has
// denominators growing like lcm(1..m)^4, which makes a 10^4 sweep take
// minutes; instead both sums are reduced by partial fractions in l to the
// harmonic sums H_k = sum 1/l^k, k = 1..4, kept as exact integer numerators
// over the common denominator L^4, L = lcm(1..m-1). With N(l) = (l+1)(l+2)/2,
// P0 = m-1, P1 = m(m-1)/2 and
//   A1 = 2 L^4 sum N(l)/l,  A2 = 2 L^4 sum N(l)/l^2,  A3, A4 likewise,
//   AU1 = 2 L^4 sum N(l)/(m-l),  AU2 = 2 L^4 sum N(l)/(m-l)^2,
// the exact bound checks are
//   SUM1 <= 24  <=>  m A1 + m^2 A2 + m^3 A3 + m^4 A4 + m AU1 <= 48 m^4 L^4
//   SUM2 <= 24  <=>  3 A1 + 2m A2 + m^2 A3 + 3 AU1 + m AU2   <= 48 m^3 L^4
class ShellSumSweep {
 public:
  struct Check {
    long m = 0;
    bool sum1_ok = false, sum2_ok = false;
    double sum1 = 0, sum2 = 0;          // floating-point shadow, for reporting only
    BigRational sum1_exact, sum2_exact; // filled when requested
  };

  ShellSumSweep() : lcm_(1UL), lcm4_(1UL) {
    for (auto& n : num_) n = BigInt(0L);
  }

  long current_m() const { return m_; }

  // advance to the next m and run both exact bound checks
  Check check_next(bool with_exact = false) {
    const long m = ++m_;
    extend_to(m - 1);

    const unsigned long mu = static_cast<unsigned long>(m);
    const unsigned long p0 = mu - 1;
    BigInt p1(static_cast<unsigned long>(m));
    p1 *= p0;
    p1 /= 2UL;

    // A1..A4, AU1, AU2 as exact integers over denominator 2 L^4
    BigInt a1 = p1;
    a1.add_mul(BigInt(static_cast<unsigned long>(p0)), 3UL);
    a1 *= lcm4_;
    a1.add_mul(num_[1], 2UL);

    BigInt a2 = num_[2];
    a2 *= 2UL;
    a2.add_mul(num_[1], 3UL);
    a2.add_mul(lcm4_, p0);

    BigInt a3 = num_[3];
    a3 *= 2UL;
    a3.add_mul(num_[2], 3UL);
    a3 += num_[1];

    BigInt a4 = num_[4];
    a4 *= 2UL;
    a4.add_mul(num_[3], 3UL);
    a4 += num_[2];

    const unsigned long m1m2 = static_cast<unsigned long>((m + 1)) * static_cast<unsigned long>(m + 2);
    BigInt au1 = p1;
    BigInt t(static_cast<long>(2 * m + 3));
    t *= static_cast<long>(m - 1);
    au1 -= t;
    au1 *= lcm4_;
    au1.add_mul(num_[1], m1m2);

    BigInt au2 = lcm4_;
    au2 *= p0;
    BigInt t2 = num_[1];
    t2 *= static_cast<unsigned long>(2 * m + 3);
    au2 -= t2;
    au2.add_mul(num_[2], m1m2);

    // SUM1: Horner in m
    BigInt lhs1 = a4;
    lhs1 *= mu;
    lhs1 += a3;
    lhs1 *= mu;
    lhs1 += a2;
    lhs1 *= mu;
    lhs1 += a1;
    lhs1 += au1;
    lhs1 *= mu;
    BigInt rhs1 = lcm4_;
    rhs1 *= 48UL;
    BigInt m4(mu);
    m4 *= mu;
    m4 *= m4;
    rhs1 *= m4;

    // SUM2
    BigInt lhs2 = a3;
    lhs2 *= mu;
    BigInt t3 = a2;
    t3 *= 2UL;
    lhs2 += t3;
    lhs2 += au2;
    lhs2 *= mu;
    lhs2.add_mul(a1, 3UL);
    lhs2.add_mul(au1, 3UL);
    BigInt rhs2 = lcm4_;
    rhs2 *= 48UL;
    rhs2 *= mu;
    rhs2 *= mu;
    rhs2 *= mu;

    Check c;
    c.m = m;
    c.sum1_ok = lhs1 <= rhs1;
    c.sum2_ok = lhs2 <= rhs2;
    c.sum1 = shadow_sum(m, /*variant1=*/true);
    c.sum2 = shadow_sum(m, /*variant1=*/false);
    if (with_exact) {
      BigInt den1 = m4;
      den1 *= lcm4_;
      den1 *= 2UL;
      c.sum1_exact = BigRational(lhs1, den1);
      BigInt den2 = lcm4_;
      den2 *= mu;
      den2 *= mu;
      den2 *= mu;
      den2 *= 2UL;
      c.sum2_exact = BigRational(lhs2, den2);
    }
    return c;
  }

 private:
  void extend_to(long lmax) {
    for (long l = covered_ + 1; l <= lmax; ++l) {
      const unsigned long lu = static_cast<unsigned long>(l);
      const unsigned long g = lcm_.gcd_ui(lu);
      const unsigned long grow = lu / g;
      if (grow > 1) {
        lcm_ *= grow;
        const unsigned long g2 = grow * grow;
        for (int k = 1; k <= 4; ++k) {
          num_[k] *= g2;
          num_[k] *= g2;
        }
        lcm4_ *= g2;
        lcm4_ *= g2;
      }
      BigInt t = lcm4_;
      for (int k = 1; k <= 4; ++k) {
        t /= lu;
        num_[k] += t;
      }
      for (int k = 1; k <= 4; ++k) hd_[k] += 1.0 / std::pow(static_cast<double>(l), k);
      covered_ = l;
    }
  }

  double shadow_sum(long m, bool variant1) const {
    const double md = static_cast<double>(m);
    const double p0 = md - 1, p1 = md * (md - 1) / 2;
    const double t1 = (p1 + 3 * p0 + 2 * hd_[1]) / 2;
    const double t2 = (p0 + 3 * hd_[1] + 2 * hd_[2]) / 2;
    const double t3 = (hd_[1] + 3 * hd_[2] + 2 * hd_[3]) / 2;
    const double t4 = (hd_[2] + 3 * hd_[3] + 2 * hd_[4]) / 2;
    const double u1 = (p1 - (2 * md + 3) * p0 + (md + 1) * (md + 2) * hd_[1]) / 2;
    const double u2 = (p0 - (2 * md + 3) * hd_[1] + (md + 1) * (md + 2) * hd_[2]) / 2;
    if (variant1)
      return t1 / (md * md * md) + t2 / (md * md) + t3 / md + t4 + u1 / (md * md * md);
    return 3 * t1 / (md * md * md) + 2 * t2 / (md * md) + t3 / md + 3 * u1 / (md * md * md) +
           u2 / (md * md);
  }

  long m_ = 1;
  long covered_ = 0;  // harmonic sums include l = 1..covered_
  BigInt lcm_, lcm4_;
  BigInt num_[5];  // num_[k] = H_k * L^4
  double hd_[5] = {0, 0, 0, 0, 0};
};

}  // namespace landau
