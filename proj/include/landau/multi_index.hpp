#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/rational.hpp"

namespace landau {

// 3D multi-index with the usual componentwise order and factorial algebra.
struct MultiIndex {
  int a1 = 0, a2 = 0, a3 = 0;

  constexpr int order() const { return a1 + a2 + a3; }
  constexpr int operator[](int i) const { return i == 0 ? a1 : (i == 1 ? a2 : a3); }

  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;

  // componentwise partial order: beta <= alpha iff beta_i <= alpha_i for each i
  friend constexpr bool leq(const MultiIndex& b, const MultiIndex& a) {
    return b.a1 <= a.a1 && b.a2 <= a.a2 && b.a3 <= a.a3;
  }

  friend constexpr MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    return {a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3};
  }
  // caller must ensure b <= a
  friend constexpr MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    return {a.a1 - b.a1, a.a2 - b.a2, a.a3 - b.a3};
  }

  std::string str() const {
    return "(" + std::to_string(a1) + "," + std::to_string(a2) + "," + std::to_string(a3) + ")";
  }
};

inline BigInt factorial(int n) {
  BigInt r(1L);
  for (int k = 2; k <= n; ++k) r *= static_cast<unsigned long>(k);
  return r;
}

// alpha! = a1! a2! a3!
inline BigInt factorial(const MultiIndex& a) {
  return factorial(a.a1) * factorial(a.a2) * factorial(a.a3);
}

// (m-k)! with the convention (-i)! = 1 for i > 0
inline BigInt shifted_factorial(long m, long k) {
  if (k < 0) throw std::invalid_argument("shifted_factorial: k must be nonnegative");
  if (m < k) return BigInt(1L);
  return factorial(static_cast<int>(m - k));
}

// C_mu^beta = mu! / ((mu-beta)! beta!), requires beta <= mu componentwise
inline BigInt binomial(const MultiIndex& mu, const MultiIndex& beta) {
  if (!leq(beta, mu))
    throw std::invalid_argument("binomial: beta " + beta.str() + " not <= mu " + mu.str());
  BigInt r = factorial(mu);
  r /= factorial(mu - beta);
  r /= factorial(beta);
  return r;
}

// number of beta in N^3 with |beta| = l: (l+2)!/(2! l!) = (l+1)(l+2)/2
inline std::int64_t shell_count(std::int64_t l) {
  if (l < 0) throw std::invalid_argument("shell_count: l must be nonnegative");
  return (l + 1) * (l + 2) / 2;
}

// visit every beta in N^3 with beta <= mu
template <typename F>
void for_each_below(const MultiIndex& mu, F&& f) {
  for (int i = 0; i <= mu.a1; ++i)
    for (int j = 0; j <= mu.a2; ++j)
      for (int k = 0; k <= mu.a3; ++k) f(MultiIndex{i, j, k});
}

// visit every alpha in N^3 with |alpha| = m
template <typename F>
void for_each_of_order(int m, F&& f) {
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j + i <= m; ++j) f(MultiIndex{i, j, m - i - j});
}

// counts of beta <= mu per shell |beta| = l, as coefficients of
// prod_i (1 + x + ... + x^{mu_i}); index l runs 0..|mu|
inline std::vector<std::int64_t> shell_counts_below(const MultiIndex& mu) {
  std::vector<std::int64_t> c{1};
  for (int comp = 0; comp < 3; ++comp) {
    const int cap = mu[comp];
    std::vector<std::int64_t> next(c.size() + cap, 0);
    for (std::size_t l = 0; l < c.size(); ++l)
      for (int d = 0; d <= cap; ++d) next[l + d] += c[l];
    c = std::move(next);
  }
  return c;  // size |mu|+1
}

}  // namespace landau
