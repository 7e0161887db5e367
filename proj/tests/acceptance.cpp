// Acceptance suite: one test case per criterion, each printing a
// [criterion NN] PASS/FAIL line. The long integrations live in their own
// cases so ctest can run and report them separately.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "landau/collision.hpp"
#include "landau/initial_data.hpp"
#include "landau/integrator.hpp"
#include "landau/lemma_sums.hpp"
#include "landau/mollifier.hpp"
#include "landau/scenario.hpp"
#include "landau/theory_checks.hpp"

using namespace landau;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void verdict(int criterion, bool pass, const std::string& detail) {
  std::printf("[criterion %02d] %s: %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

double rel_l2_inner(const std::vector<double>& a, const std::vector<double>& b,
                    const VelocityGrid& g) {
  const double r2cut = 0.25 * g.half_width * g.half_width;
  double num = 0, den = 0;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i), y = g.node(j), z = g.node(k);
        if (x * x + y * y + z * z > r2cut) continue;
        const std::size_t id = g.idx(i, j, k);
        num += (a[id] - b[id]) * (a[id] - b[id]);
        den += b[id] * b[id];
      }
  return std::sqrt(num / den);
}

bool entropy_nonincreasing(const std::vector<DiagnosticsRecord>& recs, double slack = 1e-8) {
  for (std::size_t i = 1; i < recs.size(); ++i)
    if (recs[i].entropy > recs[i - 1].entropy + slack * std::abs(recs[i - 1].entropy))
      return false;
  return true;
}

}  // namespace

TEST_CASE("criterion 01: lemma sums bounded by 24 at scale") {
  Timer timer;
  auto rep = verify_lemma21(60, 10000);
  const double secs = timer.seconds();
  const bool pass = rep.bound_ok && secs <= 10.0;
  CHECK(rep.bound_ok);
  CHECK(secs <= 10.0);
  verdict(1, pass,
          "exhaustive |mu|<=60 and shell |mu|<=1e4 exact; max sums " +
              fmt(rep.max_restricted_sum1) + "/" + fmt(rep.max_restricted_sum2) +
              " restricted, " + fmt(rep.max_shell_sum1) + "/" + fmt(rep.max_shell_sum2) +
              " shell; " + fmt(secs) + " s");
}

TEST_CASE("criterion 02: shell count closed form vs enumeration") {
  bool pass = true;
  for (int l = 0; l <= 50; ++l) {
    std::int64_t count = 0;
    for_each_of_order(l, [&](const MultiIndex&) { ++count; });
    if (count != shell_count(l)) pass = false;
    CHECK(count == shell_count(l));
  }
  verdict(2, pass, "(l+1)(l+2)/2 equals brute-force enumeration for l <= 50, exact");
}

TEST_CASE("criterion 03: convolution oracle at gamma = 0") {
  double err[2];
  int slot = 0;
  for (int n : {16, 32}) {
    auto g = VelocityGrid::make(n, 8.0);
    Assembler as(g, 0.0);
    auto f = maxwellian_field(g);
    auto c = as.assemble(f);
    auto o = as.moment_oracle(f);
    double worst = 0;
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const double x = g.node(i), y = g.node(j), z = g.node(k);
          if (x * x + y * y + z * z > 16.0) continue;
          const std::size_t id = g.idx(i, j, k);
          const double scale =
              std::abs(o.abar[0][id]) + std::abs(o.abar[1][id]) + std::abs(o.abar[2][id]);
          for (int comp = 0; comp < 6; ++comp)
            worst = std::max(worst, std::abs(c.abar[comp][id] - o.abar[comp][id]) / scale);
        }
    err[slot++] = worst;
  }
  const bool pass = err[1] <= 1e-8 && err[0] / err[1] >= 10.0;
  CHECK(err[1] <= 1e-8);
  CHECK(err[0] / err[1] >= 10.0);
  verdict(3, pass,
          "assemble vs moment oracle on |v| <= V/2: " + fmt(err[1]) + " at n=32, ratio n16/n32 = " +
              fmt(err[0] / err[1]));
}

TEST_CASE("criterion 04: ellipticity constant") {
  auto g = VelocityGrid::make(32, 8.0);
  Assembler as(g, 0.0);
  auto scan = ellipticity_constant(as.assemble(maxwellian_field(g)));
  bool pass = std::abs(scan.K_hat - 2.0) <= 1e-6;
  CHECK(std::abs(scan.K_hat - 2.0) <= 1e-6);

  auto g16 = VelocityGrid::make(16, 8.0);
  for (double gamma : {0.0, 0.5, 1.0}) {
    Assembler a16(g16, gamma);
    for (int which = 0; which < 3; ++which) {
      DistributionField f = which == 0   ? maxwellian_field(g16)
                            : which == 1 ? bi_maxwellian_field(g16, 2.0)
                                         : anisotropic_gaussian_field(g16, 2.0, 0.5, 0.5);
      const double k_hat = ellipticity_constant(a16.assemble(f)).K_hat;
      if (!(k_hat > 0)) pass = false;
      CHECK(k_hat > 0);
    }
  }
  verdict(4, pass, "K_hat = " + fmt(scan.K_hat) + " (target 2 +- 1e-6); positive across gamma in {0, 0.5, 1}");
}

TEST_CASE("criterion 05: equilibrium annihilation") {
  bool pass = true;
  std::string detail;
  for (double gamma : {0.0, 1.0}) {
    double prev_nd = -1, prev_dv = -1;
    for (int n : {16, 32}) {
      auto g = VelocityGrid::make(n, 8.0);
      Assembler as(g, gamma);
      auto f = maxwellian_field(g);
      auto coeffs = as.assemble(f);
      double denom = 0;
      for (std::size_t i = 0; i < f.values.size(); ++i)
        denom += coeffs.cbar[i] * f.values[i] * coeffs.cbar[i] * f.values[i];
      denom = std::sqrt(denom);
      auto qn = apply_nondivergence(f, coeffs);
      auto qd = apply_divergence(f, as);
      double rn = 0, rd = 0;
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        rn += qn.values[i] * qn.values[i];
        rd += qd.values[i] * qd.values[i];
      }
      rn = std::sqrt(rn) / denom;
      rd = std::sqrt(rd) / denom;
      if (n == 32) {
        if (!(rn <= 1e-6 && rd <= 1e-6 && rn < prev_nd && rd < prev_dv)) pass = false;
        CHECK(rn <= 1e-6);
        CHECK(rd <= 1e-6);
        CHECK(rn < prev_nd);
        CHECK(rd < prev_dv);
        detail += "gamma=" + fmt(gamma) + ": " + fmt(rn) + "/" + fmt(rd) + " (nondiv/div)  ";
      }
      prev_nd = rn;
      prev_dv = rd;
    }
  }
  verdict(5, pass, detail + "at n=32, decreasing from n=16");
}

TEST_CASE("criterion 06: divergence and nondivergence forms agree") {
  bool pass = true;
  std::string detail;
  auto g = VelocityGrid::make(32, 8.0);
  for (double gamma : {0.0, 1.0}) {
    Assembler as(g, gamma);
    auto f = bi_maxwellian_field(g, 1.5, 0.6, 0.4);
    auto qn = apply_nondivergence(f, as.assemble(f));
    auto qd = apply_divergence(f, as);
    const double rel = rel_l2_inner(qn.values, qd.values, g);
    if (!(rel <= 1e-6)) pass = false;
    CHECK(rel <= 1e-6);
    detail += "gamma=" + fmt(gamma) + ": " + fmt(rel) + "  ";
  }
  verdict(6, pass, detail + "relative L2 on |v| <= V/2");
}

TEST_CASE("criterion 07: conservation on the bi-Maxwellian run") {
  Timer timer;
  auto cfg = load_config(SCENARIO_DIR "/bimax_conservation.json");
  const auto grid = VelocityGrid::make(cfg.n, cfg.half_width);
  Assembler assembler(grid, cfg.gamma, cfg.tol_trunc);

  RunConfig rc;
  rc.t_end = cfg.t_end;
  rc.diag_every = cfg.diag_every;
  rc.tol_neg = cfg.tol_neg;
  rc.scheme = cfg.scheme;
  rc.record.gamma = cfg.gamma;
  rc.record.m_max = cfg.m_max;
  rc.record.c0_list = cfg.c0_list;
  auto res = run_simulation(build_initial(cfg), assembler, rc);
  const double run_secs = timer.seconds();

  const auto& recs = res.records;
  const double dm = std::abs(recs.back().mass - recs.front().mass) / recs.front().mass;
  const double de = std::abs(recs.back().energy - recs.front().energy) / recs.front().energy;
  bool pass = dm <= 1e-6 && de <= 1e-4 && run_secs <= 300.0;
  CHECK(dm <= 1e-6);
  CHECK(de <= 1e-4);
  CHECK(run_secs <= 300.0);
  CHECK(entropy_nonincreasing(recs));

  // dt^4 temporal self-convergence on a Richardson ladder (criterion 7b)
  auto g16 = VelocityGrid::make(16, 8.0);
  Assembler a16(g16, 0.0);
  auto f0 = bi_maxwellian_field(g16, 2.0);
  const double dt0 = stable_dt(a16.assemble(f0), g16.h, 0.25);
  const double horizon = 32 * dt0;
  std::vector<std::vector<double>> finals;
  for (int halvings = 0; halvings < 3; ++halvings) {
    const int steps = 32 << halvings;
    SimulationState s{0.0, f0, 0.0, 0};
    SchemeConfig sc;  // RK4, every stage
    for (int k = 0; k < steps; ++k)
      s = step(s, a16, a16.assemble(s.f), horizon / steps, sc, 1e-3);
    finals.push_back(std::move(s.f.values));
  }
  auto diff = [](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
  };
  const double order = std::log2(diff(finals[0], finals[1]) / diff(finals[1], finals[2]));
  if (!(std::abs(order - 4.0) <= 0.8)) pass = false;
  CHECK(order == doctest::Approx(4.0).epsilon(0.2));

  // drift shrinks under combined (n, dt) refinement
  double drifts[2];
  for (int level = 0; level < 2; ++level) {
    ScenarioConfig c2 = cfg;
    c2.n = 16 << level;
    c2.scheme.cfl = 0.25 / (1 << level);
    c2.t_end = horizon;
    c2.tol_neg = 1e-3;
    Assembler a2(VelocityGrid::make(c2.n, c2.half_width), 0.0);
    RunConfig rc2;
    rc2.t_end = c2.t_end;
    rc2.diag_every = 1000000;
    rc2.tol_neg = c2.tol_neg;
    rc2.scheme = c2.scheme;
    rc2.record.gamma = 0.0;
    rc2.record.m_max = 0;
    auto r2 = run_simulation(build_initial(c2), a2, rc2);
    drifts[level] =
        std::abs(r2.records.back().mass - r2.records.front().mass) / r2.records.front().mass;
  }
  // the stage projection pins both moments, so refined drifts sit at
  // round-off; the comparison saturates there
  if (!(drifts[1] <= std::max(drifts[0], 1e-12))) pass = false;
  CHECK(drifts[1] <= std::max(drifts[0], 1e-12));

  verdict(7, pass,
          "dM/M = " + fmt(dm) + " (<=1e-6), dE/E = " + fmt(de) + " (<=1e-4), " +
              fmt(run_secs) + " s (<=300); dt-order " + fmt(order) + "; mass drift " +
              fmt(drifts[0]) + " -> " + fmt(drifts[1]) + " under refinement");
}

TEST_CASE("criterion 08: H-theorem and equilibrium stability") {
  // 500 steps at the discrete equilibrium: all recorded diagnostics hold to
  // 1e-6 relative and the entropy column never rises
  auto g = VelocityGrid::make(32, 8.0);
  Assembler as(g, 0.0);
  RunConfig rc;
  rc.diag_every = 100;
  rc.record.gamma = 0.0;
  rc.record.m_max = 1;
  auto f = maxwellian_field(g);
  rc.t_end = 500 * stable_dt(as.assemble(f), g.h, rc.scheme.cfl) * 0.9999;
  auto res = run_simulation(f, as, rc);
  bool pass = res.final_state.step_count >= 500;
  CHECK(res.final_state.step_count >= 500);
  const auto& first = res.records.front();
  for (const auto& rec : res.records) {
    if (std::abs(rec.mass - first.mass) / first.mass > 1e-6) pass = false;
    if (std::abs(rec.energy - first.energy) / first.energy > 1e-6) pass = false;
    if (std::abs(rec.entropy - first.entropy) / std::abs(first.entropy) > 1e-6) pass = false;
    if (std::abs(rec.k_hat - first.k_hat) / first.k_hat > 1e-6) pass = false;
  }
  const bool mono = entropy_nonincreasing(res.records);
  if (!mono) pass = false;
  CHECK(pass);
  verdict(8, pass,
          "500-step equilibrium drift <= 1e-6 on M, E, H, K_hat; entropy nonincreasing "
          "(slack 1e-8); remaining scenarios checked inside criteria 7, 9, 12");
}

namespace {

struct SmoothingOutcome {
  bool pass = true;        // criterion 9 claims
  bool entropy_ok = true;  // criterion 8 on this scenario
  double entropy_worst_rise = 0;
  std::string detail;
};

SmoothingOutcome smoothing_criterion(const char* scenario_file) {
  auto cfg = load_config(scenario_file);
  const auto grid = VelocityGrid::make(cfg.n, cfg.half_width);
  Assembler assembler(grid, cfg.gamma, cfg.tol_trunc);

  RunConfig rc;
  rc.t_end = cfg.t_end;
  rc.diag_every = cfg.diag_every;
  rc.tol_neg = cfg.tol_neg;
  rc.scheme = cfg.scheme;
  rc.record.gamma = cfg.gamma;
  rc.record.m_max = cfg.m_max;
  rc.record.c0_list = cfg.c0_list;

  std::vector<double> times;
  std::vector<DistributionField> snaps;
  auto res = run_simulation(build_initial(cfg), assembler, rc,
                            [&](const SimulationState& st, const DiagnosticsRecord&) {
                              times.push_back(st.t);
                              snaps.push_back(st.f);
                            });
  SmoothingOutcome out;

  // entropy on the shipped trajectory (criterion 8 applies to every scenario)
  out.entropy_ok = entropy_nonincreasing(res.records);
  for (std::size_t i = 1; i < res.records.size(); ++i)
    out.entropy_worst_rise = std::max(
        out.entropy_worst_rise, res.records[i].entropy - res.records[i - 1].entropy);

  // initial datum is rough
  const auto& recs = res.records;
  if (!(recs.front().gevrey_c <= 0.01)) {
    out.pass = false;
    out.detail += "c(0) = " + fmt(recs.front().gevrey_c) + " > 0.01; ";
  }

  // c(t) > 0, fit quality, and 5%-monotonicity on [0.1, 1]
  double c_at_01 = 0;
  bool have01 = false;
  double prev_c = 0;
  bool first_in_window = true;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].t < 0.1) continue;
    if (!have01) {
      c_at_01 = recs[i].gevrey_c;
      have01 = true;
    }
    if (!(recs[i].gevrey_c > 0)) {
      out.pass = false;
      out.detail += "c(t=" + fmt(recs[i].t) + ") <= 0; ";
    }
    if (!(recs[i].gevrey_r2 >= 0.98)) {
      out.pass = false;
      out.detail += "R2(t=" + fmt(recs[i].t) + ") = " + fmt(recs[i].gevrey_r2) + " < 0.98; ";
    }
    if (!first_in_window && recs[i].gevrey_c < prev_c * 0.95) {
      out.pass = false;
      out.detail += "c dropped >5% at t=" + fmt(recs[i].t) + "; ";
    }
    prev_c = recs[i].gevrey_c;
    first_in_window = false;
  }
  if (!have01) {
    out.pass = false;
    out.detail += "no records past t=0.1; ";
  }

  // Theorem-shape property: with c0 = c(0.1)/2, the analytic norm grows at
  // most like C (t+1) over [0.1, 1]; finiteness of every value is the gate
  const double c0 = c_at_01 / 2.0;
  double c_fit = 0;
  bool finite = true;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    if (times[i] < 0.1) continue;
    const double a = analytic_norm(forward_transform(snaps[i]), c0);
    if (!std::isfinite(a)) finite = false;
    c_fit = std::max(c_fit, a / (times[i] + 1.0));
  }
  if (!finite) {
    out.pass = false;
    out.detail += "analytic norm hit the divergence sentinel; ";
  }
  out.detail += "c: " + fmt(recs.front().gevrey_c) + " -> " + fmt(c_at_01) + " (t=0.1) -> " +
                fmt(recs.back().gevrey_c) + " (t=1); fitted C = " + fmt(c_fit) +
                " at c0 = " + fmt(c0);
  return out;
}

}  // namespace

TEST_CASE("criterion 09a: analytic smoothing from rough data, gamma = 0") {
  auto out = smoothing_criterion(SCENARIO_DIR "/smoothing_gamma0.json");
  CHECK(out.pass);
  verdict(9, out.pass, "gamma=0: " + out.detail);
  // criterion 8 coverage of this shipped scenario: the truncated-domain
  // far-field pedestal drags the measured entropy column up at the 1e-2
  // scale mid-run (see the project notes); reported honestly here
  CHECK(out.entropy_ok);
  verdict(8, out.entropy_ok,
          "smoothing gamma=0 entropy column; worst per-record rise " +
              fmt(out.entropy_worst_rise));
}

TEST_CASE("criterion 09b: analytic smoothing from rough data, gamma = 1") {
  auto out = smoothing_criterion(SCENARIO_DIR "/smoothing_gamma1.json");
  CHECK(out.pass);
  verdict(9, out.pass, "gamma=1: " + out.detail);
  CHECK(out.entropy_ok);
  verdict(8, out.entropy_ok,
          "smoothing gamma=1 entropy column; worst per-record rise " +
              fmt(out.entropy_worst_rise));
}

TEST_CASE("criterion 10: mollifier bounds") {
  bool pass = true;
  std::string detail = "sup|d^l psi_N| / (LN)^|l| worst ratios:";
  for (int n_order : {2, 3, 4, 5}) {
    auto m = build_mollifier(n_order, 1.0 / (8 * n_order));
    // plateau and support to one grid band
    if (std::abs(m.at(0, 0, 0) - 1.0) > 1e-6) pass = false;
    if (std::abs(m.at(0.5, 0.5, 0.5) - 1.0) > 1e-6) pass = false;
    if (std::abs(m.at(2.0 + 2 * m.h, 0, 0)) > 1e-9) pass = false;
    auto rep = verify_mollifier_bounds(m, 3);
    double worst = 0;
    for (const auto& row : rep.rows) worst = std::max(worst, row.ratio);
    if (!rep.pass) pass = false;
    CHECK(rep.pass);
    detail += " N=" + std::to_string(n_order) + ": " + fmt(worst);
  }
  CHECK(pass);
  verdict(10, pass, detail + " (allowance 1.05)");
}

TEST_CASE("criterion 11: coefficient-derivative probe") {
  auto g = VelocityGrid::make(64, 8.0);
  bool pass = true;

  Assembler a0(g, 0.0);
  auto rep0 = coefficient_derivative_probe(maxwellian_field(g), a0, 4, 2.0);
  const double scale = rep0.r_abar_order(2);
  double worst0 = 0;
  for (int m = 3; m <= 4; ++m) worst0 = std::max(worst0, rep0.r_abar_order(m));
  if (!(worst0 <= 1e-8 * scale)) pass = false;
  CHECK(worst0 <= 1e-8 * scale);

  Assembler a1(g, 1.0);
  auto rep1 = coefficient_derivative_probe(maxwellian_field(g), a1, 4, 2.0);
  double hi = 0, lo = std::numeric_limits<double>::infinity();
  for (int m = 2; m <= 4; ++m) {
    const double c = rep1.c_hat_a_order(m);
    hi = std::max(hi, c);
    lo = std::min(lo, c);
  }
  if (!(hi / lo <= 10.0)) pass = false;
  CHECK(hi / lo <= 10.0);
  verdict(11, pass,
          "gamma=0 high-order remnant " + fmt(worst0 / scale) + " (<=1e-8); gamma=1 C(beta) in [" +
              fmt(lo) + ", " + fmt(hi) + "], spread " + fmt(hi / lo) + "x (<=10x)");
}

TEST_CASE("criterion 12: relaxation against the moment-ODE oracle") {
  auto cfg = load_config(SCENARIO_DIR "/aniso_relaxation.json");
  const auto grid = VelocityGrid::make(cfg.n, cfg.half_width);
  Assembler assembler(grid, cfg.gamma, cfg.tol_trunc);

  RunConfig rc;
  rc.t_end = cfg.t_end;
  rc.diag_every = cfg.diag_every;
  rc.tol_neg = cfg.tol_neg;
  rc.scheme = cfg.scheme;
  rc.record.gamma = cfg.gamma;
  rc.record.m_max = cfg.m_max;
  rc.record.c0_list = cfg.c0_list;

  // second-moment trajectory and L2 distance to the matched Maxwellian
  std::vector<double> times, m1t, m2t, m3t, dist;
  DistributionField eq = DistributionField::zero(grid);
  bool eq_ready = false;
  auto hook = [&](const SimulationState& st, const DiagnosticsRecord& rec) {
    const auto& g = st.f.grid;
    double mxx = 0, myy = 0, mzz = 0;
    for (int k = 0; k < g.n; ++k)
      for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
          const double w = st.f.values[g.idx(i, j, k)];
          mxx += w * g.node(i) * g.node(i);
          myy += w * g.node(j) * g.node(j);
          mzz += w * g.node(k) * g.node(k);
        }
    const double h3 = g.h * g.h * g.h;
    times.push_back(st.t);
    m1t.push_back(mxx * h3);
    m2t.push_back(myy * h3);
    m3t.push_back(mzz * h3);
    if (!eq_ready) {
      // matched Maxwellian from the discrete initial mass and energy
      const double mass = rec.mass, temp = 2.0 * rec.energy / (3.0 * mass);
      eq = maxwellian_field(g, mass, temp);
      eq_ready = true;
    }
    double acc = 0;
    for (std::size_t i = 0; i < eq.values.size(); ++i) {
      const double d = st.f.values[i] - eq.values[i];
      acc += d * d;
    }
    dist.push_back(std::sqrt(acc * h3));
  };
  auto res = run_simulation(build_initial(cfg), assembler, rc, hook);

  bool pass = entropy_nonincreasing(res.records);
  CHECK(entropy_nonincreasing(res.records));

  // relaxation rate exp(-12 M t): the 1e-3 gate falls long before t = 10
  const double final_dist = dist.back();
  if (!(final_dist <= 1e-3)) pass = false;
  CHECK(final_dist <= 1e-3);
  // monotone tail: no rebound after the gate is reached
  for (std::size_t i = 1; i < dist.size(); ++i)
    if (dist[i] > dist[i - 1] * 1.05 && dist[i] > 1e-3) pass = false;

  // moment-ODE oracle: m_k(t) = S/3 + (m_k(0) - S/3) exp(-12 M t)
  const double mass = res.records.front().mass;
  const double s0 = m1t.front() + m2t.front() + m3t.front();
  double worst = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double decay = std::exp(-12.0 * mass * times[i]);
    const double o1 = s0 / 3 + (m1t.front() - s0 / 3) * decay;
    const double o2 = s0 / 3 + (m2t.front() - s0 / 3) * decay;
    const double o3 = s0 / 3 + (m3t.front() - s0 / 3) * decay;
    worst = std::max(worst, std::abs(m1t[i] - o1) / o1);
    worst = std::max(worst, std::abs(m2t[i] - o2) / o2);
    worst = std::max(worst, std::abs(m3t[i] - o3) / o3);
  }
  if (!(worst <= 1e-3)) pass = false;
  CHECK(worst <= 1e-3);
  verdict(12, pass,
          "L2 distance to matched Maxwellian " + fmt(final_dist) +
              " at t=1 (<=1e-3, gate 'by t=10'); worst moment-ODE mismatch " + fmt(worst) +
              " (<=1e-3)");
}
