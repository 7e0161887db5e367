#include <doctest.h>

#include <cmath>
#include <sstream>

#include "landau/initial_data.hpp"
#include "landau/mollifier.hpp"
#include "landau/theory_checks.hpp"

using namespace landau;

TEST_CASE("lemma 2.1 verification at desk scale") {
  auto rep = verify_lemma21(10, 1000);
  CHECK(rep.bound_ok);
  CHECK(rep.exhaustive_count > 0);
  // the shell sums peak at |mu| = 2 where each shell-1 index contributes 2
  CHECK(rep.max_shell_sum1 == doctest::Approx(6.0));
  CHECK(rep.arg_shell_sum1 == 2);
  CHECK(rep.max_restricted_sum1 <= rep.max_shell_sum1 + 1e-12);
  CHECK(rep.max_restricted_sum2 <= 24.0);

  std::ostringstream csv;
  write_csv(rep, csv);
  CHECK(csv.str().find("shell_max,sum1,2,6") != std::string::npos);
}

TEST_CASE("mollifier construction invariants") {
  for (int n_order : {2, 3}) {
    const double h = 1.0 / (8 * n_order);
    auto m = build_mollifier(n_order, h);
    // plateau, support, and 0 <= psi <= 1
    CHECK(std::abs(m.at(0, 0, 0) - 1.0) <= 1e-6);
    CHECK(std::abs(m.at(0.5, 0.5, 0.5) - 1.0) <= 1e-6);  // |v| = 0.87 < 1
    CHECK(std::abs(m.at(2.0 + 2 * h, 0, 0)) <= 1e-9);
    CHECK(std::abs(m.at(0, 0, -(2.0 + 2 * h))) <= 1e-9);
    double lo = 1e300, hi = -1e300, integral = 0;
    for (double v : m.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      integral += v;
    }
    integral *= h * h * h;
    CHECK(lo >= -1e-9);
    CHECK(hi <= 1.0 + 1e-9);
    const double vol1 = 4.0 / 3.0 * M_PI, vol2 = vol1 * 8.0;
    CHECK(integral >= vol1);
    CHECK(integral <= vol2);
  }
  CHECK_THROWS_AS(build_mollifier(4, 1.0 / 16.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mollifier(1, 1.0 / 64.0), std::invalid_argument);
}

TEST_CASE("mollifier derivative bounds at N=2") {
  auto m = build_mollifier(2, 1.0 / 16.0);
  auto rep = verify_mollifier_bounds(m, 2);
  CHECK(rep.pass);
  for (const auto& row : rep.rows) {
    CHECK(row.ratio <= 1.05);
    if (row.a1 + row.a2 + row.a3 == 0) CHECK(row.sup_derivative == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(rep.seed_l >= 1.0);
}

TEST_CASE("g bracket follows the shifted-factorial convention") {
  auto g = VelocityGrid::make(16, 8.0);
  auto f = maxwellian_field(g);
  auto hs = half_spectrum(f);
  // for |omega| <= 3 the factorial term is B^|omega| (since (-i)! = 0! = 1)
  for (int order : {0, 1, 2, 3}) {
    const double gb = g_bracket(hs, order, 2.0);
    double worst = 0;
    for_each_of_order(order, [&](const MultiIndex& w) {
      worst = std::max(worst, derivative_l2_norm(hs, w));
    });
    CHECK(gb == doctest::Approx(worst + std::pow(2.0, order)));
  }
  // monotone in B, and the factorial term dominates for large order
  CHECK(g_bracket(hs, 2, 3.0) > g_bracket(hs, 2, 2.0));
  const double g6 = g_bracket(hs, 6, 2.0);
  CHECK(g6 >= std::pow(2.0, 6) * 6.0);  // B^6 (6-3)! = 64 * 6
}

TEST_CASE("probe: gamma=0 coefficient derivatives of order >= 3 vanish") {
  // moments of d^beta f of the quadratic kernel cancel exactly; the probe
  // noise floor is the xi^|beta|-amplified Nyquist tail of f, so the check
  // runs at n=64 (the acceptance suite covers beta_max = 4)
  auto g = VelocityGrid::make(64, 8.0);
  Assembler as(g, 0.0);
  auto f = maxwellian_field(g);
  auto rep = coefficient_derivative_probe(f, as, 3, 2.0);

  // scale: the quadratic coefficient field has second derivatives of size 2
  const double scale = rep.r_abar_order(2);
  CHECK(scale == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(rep.r_abar_order(3) <= 1e-8 * scale);
  for (const auto& row : rep.rows)
    CHECK(row.r_cbar <= 1e-8 * 6.0);  // cbar = -6M const, all derivatives vanish
}

TEST_CASE("probe: gamma=1 per-order fitted constants stay within a decade") {
  auto g = VelocityGrid::make(64, 8.0);
  Assembler as(g, 1.0);
  auto f = maxwellian_field(g);
  auto rep = coefficient_derivative_probe(f, as, 3, 2.0);
  double hi = 0, lo = 1e300;
  for (int m = 2; m <= 3; ++m) {
    const double c = rep.c_hat_a_order(m);
    CHECK(std::isfinite(c));
    CHECK(c > 0);
    hi = std::max(hi, c);
    lo = std::min(lo, c);
  }
  CHECK(hi / lo <= 10.0);

  std::ostringstream csv;
  write_csv(rep, csv);
  CHECK(csv.str().find("c_hat_a") != std::string::npos);
}
