// Batch driver: scenario runs, theory-check suites, and convergence studies.
// Exit code 0 iff every asserted bound passes; failing checks are named.

#include <CLI11.hpp>
#include <fftw3.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "landau/mollifier.hpp"
#include "landau/scenario.hpp"
#include "landau/theory_checks.hpp"

namespace fs = std::filesystem;
using namespace landau;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) std::cout << ": " << detail;
  std::cout << '\n';
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& snapshots) {
  auto cfg = load_config(config_path);
  SnapshotPolicy policy = SnapshotPolicy::None;
  int every = 1;
  if (snapshots == "all") {
    policy = SnapshotPolicy::All;
  } else if (snapshots.rfind("every:", 0) == 0) {
    policy = SnapshotPolicy::EveryK;
    every = std::stoi(snapshots.substr(6));
  } else if (snapshots != "none") {
    throw CLI::ValidationError("--snapshots must be none, all, or every:k");
  }
  auto out = run_scenario(cfg, out_dir, policy, every);
  if (cfg.clip_negative)
    std::cout << "note: clip-and-renormalize was enabled; " << out.result.clip_events
              << " steps clipped\n";
  std::cout << "wrote " << out.csv_path << " (" << out.result.records.size() << " records, "
            << out.result.final_state.step_count << " steps, final t = "
            << fmt(out.result.final_state.t) << ")\n";
  // entropy must be nonincreasing along every emitted trajectory
  bool entropy_ok = true;
  for (std::size_t i = 1; i < out.result.records.size(); ++i)
    entropy_ok = entropy_ok &&
                 out.result.records[i].entropy <=
                     out.result.records[i - 1].entropy +
                         1e-8 * std::abs(out.result.records[i - 1].entropy);
  report("entropy nonincreasing", entropy_ok);
  return g_failures ? 1 : 0;
}

int cmd_check_lemmas(int max_exhaustive, long max_shell, const std::string& out_dir) {
  auto rep = verify_lemma21(max_exhaustive, max_shell);
  report("lemma 2.1 bound (<= 24, exact arithmetic)", rep.bound_ok,
         "max restricted sums " + fmt(rep.max_restricted_sum1) + " at " +
             rep.arg_restricted_sum1.str() + " / " + fmt(rep.max_restricted_sum2) + " at " +
             rep.arg_restricted_sum2.str() + "; max shell sums " + fmt(rep.max_shell_sum1) +
             " at |mu|=" + std::to_string(rep.arg_shell_sum1) + " / " +
             fmt(rep.max_shell_sum2) + " at |mu|=" + std::to_string(rep.arg_shell_sum2));
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / "lemma21_report.csv");
    write_csv(rep, os);
  }
  return g_failures ? 1 : 0;
}

int cmd_check_mollifier(int n_max, int lambda_max, const std::string& out_dir) {
  std::ofstream csv;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    csv.open(fs::path(out_dir) / "mollifier_report.csv");
    csv << "N,lambda1,lambda2,lambda3,sup_derivative,bound,ratio,pass\n";
  }
  for (int n_order = 2; n_order <= n_max; ++n_order) {
    auto m = build_mollifier(n_order, 1.0 / (8 * n_order));
    const double at0 = m.at(0, 0, 0);
    report("mollifier N=" + std::to_string(n_order) + " plateau", std::abs(at0 - 1.0) <= 1e-6,
           "psi(0) = " + fmt(at0));
    const double offsup = std::abs(m.at(2.0 + 2 * m.h, 0, 0));
    report("mollifier N=" + std::to_string(n_order) + " support", offsup <= 1e-9,
           "psi(2+2h) = " + fmt(offsup));
    auto rep = verify_mollifier_bounds(m, lambda_max);
    double worst = 0;
    for (const auto& row : rep.rows) {
      worst = std::max(worst, row.ratio);
      if (csv.is_open())
        csv << n_order << ',' << row.a1 << ',' << row.a2 << ',' << row.a3 << ','
            << row.sup_derivative << ',' << row.bound << ',' << row.ratio << ',' << row.pass
            << '\n';
    }
    report("mollifier N=" + std::to_string(n_order) + " derivative bounds (LN)^|lambda|",
           rep.pass, "worst ratio " + fmt(worst) + " (allowance 1.05), L = " + fmt(rep.seed_l));
  }
  return g_failures ? 1 : 0;
}

int cmd_check_coefficients(double gamma, int n, double half_width, int beta_max, double b_const,
                           const std::string& out_dir) {
  auto grid = VelocityGrid::make(n, half_width);
  Assembler assembler(grid, gamma);
  auto f = maxwellian_field(grid);
  auto rep = coefficient_derivative_probe(f, assembler, beta_max, b_const);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / "coefficient_probe.csv");
    write_csv(rep, os);
  }
  if (gamma == 0.0) {
    const double scale = rep.r_abar_order(2);
    double worst = 0;
    for (int m = 3; m <= beta_max; ++m) worst = std::max(worst, rep.r_abar_order(m));
    report("gamma=0 abar derivatives of order >= 3 vanish", worst <= 1e-8 * scale,
           "worst " + fmt(worst) + " vs scale " + fmt(scale));
  } else {
    double hi = 0, lo = std::numeric_limits<double>::infinity();
    for (int m = 2; m <= std::min(beta_max, 4); ++m) {
      const double c = rep.c_hat_a_order(m);
      hi = std::max(hi, c);
      lo = std::min(lo, c);
    }
    report("fitted C(beta) within one decade across orders 2..4", hi / lo <= 10.0,
           "range [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  return g_failures ? 1 : 0;
}

int cmd_equilibrium_residual(double gamma, const std::vector<int>& ns, double half_width) {
  double prev_nd = -1, prev_dv = -1;
  for (int n : ns) {
    auto grid = VelocityGrid::make(n, half_width);
    Assembler assembler(grid, gamma);
    auto f = maxwellian_field(grid);
    auto coeffs = assembler.assemble(f);
    double denom = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double w = coeffs.cbar[i] * f.values[i];
      denom += w * w;
    }
    denom = std::sqrt(denom);
    auto qn = apply_nondivergence(f, coeffs);
    auto qd = apply_divergence(f, assembler);
    double rn = 0, rd = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      rn += qn.values[i] * qn.values[i];
      rd += qd.values[i] * qd.values[i];
    }
    rn = std::sqrt(rn) / denom;
    rd = std::sqrt(rd) / denom;
    std::cout << "n=" << n << "  |Q|/|cbar f|: nondivergence " << fmt(rn) << ", divergence "
              << fmt(rd) << '\n';
    if (prev_nd >= 0) {
      report("equilibrium residual decreases with n (nondivergence)", rn < prev_nd);
      report("equilibrium residual decreases with n (divergence)", rd < prev_dv);
    }
    prev_nd = rn;
    prev_dv = rd;
  }
  return g_failures ? 1 : 0;
}

int cmd_convergence_ladder(const std::string& config_path, const std::string& out_dir) {
  auto cfg = load_config(config_path);
  fs::create_directories(out_dir);
  std::ofstream os(fs::path(out_dir) / "ladder.csv");
  os << "kind,level,value\n";

  // temporal self-convergence at fixed n: halve dt over a short horizon and
  // report the Richardson order estimate
  const auto grid = VelocityGrid::make(cfg.n, cfg.half_width);
  Assembler assembler(grid, cfg.gamma, cfg.tol_trunc);
  auto f0 = build_initial(cfg);
  auto coeffs0 = assembler.assemble(f0);
  const double dt0 = stable_dt(coeffs0, grid.h, cfg.scheme.cfl);
  const double horizon = 32 * dt0;
  std::vector<std::vector<double>> finals;
  for (int halvings = 0; halvings < 3; ++halvings) {
    const int steps = 32 << halvings;
    const double dt = horizon / steps;
    SimulationState s{0.0, f0, 0.0, 0};
    for (int k = 0; k < steps; ++k)
      s = step(s, assembler, assembler.assemble(s.f), dt, cfg.scheme, cfg.tol_neg);
    finals.push_back(std::move(s.f.values));
  }
  const auto diff = [](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
  };
  const double e1 = diff(finals[0], finals[1]);
  const double e2 = diff(finals[1], finals[2]);
  const double order = std::log2(e1 / e2);
  const double expect = cfg.scheme.scheme == Scheme::RK4 ? 4.0 : 2.0;
  os << "temporal_order,0," << order << '\n';
  std::cout << "temporal self-convergence order " << fmt(order) << " (scheme order " << expect
            << ")\n";
  report("temporal order within 20% of the scheme order",
         std::abs(order - expect) <= 0.2 * expect);

  // conservation drift under combined (n, dt) refinement
  double drift_coarse = -1;
  for (int level = 0; level < 2; ++level) {
    ScenarioConfig c2 = cfg;
    c2.n = cfg.n << level;
    c2.scheme.cfl = cfg.scheme.cfl / (1 << level);
    c2.t_end = horizon;
    auto out =
        run_scenario(c2, (fs::path(out_dir) / ("level" + std::to_string(level))).string());
    const auto& recs = out.result.records;
    const double dm = std::abs(recs.back().mass - recs.front().mass) / recs.front().mass;
    const double de = std::abs(recs.back().energy - recs.front().energy) / recs.front().energy;
    os << "mass_drift," << level << ',' << dm << '\n';
    os << "energy_drift," << level << ',' << de << '\n';
    std::cout << "level " << level << " (n=" << c2.n << "): mass drift " << fmt(dm)
              << ", energy drift " << fmt(de) << '\n';
    if (level == 1)
      report("conservation drift shrinks under refinement (or sits at round-off)",
             dm <= std::max(drift_coarse, 1e-12));
    drift_coarse = dm;
  }
  return g_failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"velocity-space spectral solver for the homogeneous Landau equation"};
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads, "FFTW threads (default 1)");

  std::string config_path, out_dir = "out", snapshots = "none";
  auto* run = app.add_subcommand("run", "integrate a scenario and emit diagnostics");
  run->add_option("--config", config_path, "scenario JSON")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--snapshots", snapshots, "none | all | every:k");

  int max_exhaustive = 60;
  long max_shell = 10000;
  std::string lemma_out;
  auto* lemmas = app.add_subcommand("check-lemmas", "combinatorial sum bounds, exact");
  lemmas->add_option("--max-exhaustive", max_exhaustive, "exhaustive |mu| range");
  lemmas->add_option("--max-shell", max_shell, "shell-mode |mu| range");
  lemmas->add_option("--out", lemma_out, "report directory");

  int n_max = 5, lambda_max = 3;
  std::string mol_out;
  auto* mol = app.add_subcommand("check-mollifier", "iterated-convolution cutoff bounds");
  mol->add_option("--n-max", n_max, "largest N");
  mol->add_option("--lambda-max", lambda_max, "largest derivative order (<= 3)");
  mol->add_option("--out", mol_out, "report directory");

  double gamma = 1.0, half_width = 8.0, b_const = 2.0;
  int probe_n = 64, beta_max = 4;
  std::string probe_out;
  auto* probe = app.add_subcommand("check-coefficients", "coefficient-derivative probe");
  probe->add_option("--gamma", gamma, "kernel exponent in [0, 1]");
  probe->add_option("--n", probe_n, "grid points per axis");
  probe->add_option("--V", half_width, "domain half width");
  probe->add_option("--beta-max", beta_max, "largest derivative order (2..6)");
  probe->add_option("--B", b_const, "G-bracket constant B");
  probe->add_option("--out", probe_out, "report directory");

  double eq_gamma = 0.0, eq_v = 8.0;
  std::vector<int> eq_ns = {16, 32};
  auto* eq = app.add_subcommand("equilibrium-residual",
                                "operator residual on the discrete Maxwellian");
  eq->add_option("--gamma", eq_gamma, "kernel exponent");
  eq->add_option("--n-list", eq_ns, "grid sizes");
  eq->add_option("--V", eq_v, "domain half width");

  std::string ladder_config, ladder_out = "out";
  auto* ladder = app.add_subcommand("convergence-ladder", "(n, dt) refinement study");
  ladder->add_option("--config", ladder_config, "baseline scenario JSON")->required();
  ladder->add_option("--out", ladder_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (threads > 1) {
    fftw_init_threads();
    fftw_plan_with_nthreads(threads);
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, snapshots);
    if (*lemmas) return cmd_check_lemmas(max_exhaustive, max_shell, lemma_out);
    if (*mol) return cmd_check_mollifier(n_max, lambda_max, mol_out);
    if (*probe)
      return cmd_check_coefficients(gamma, probe_n, half_width, beta_max, b_const, probe_out);
    if (*eq) return cmd_equilibrium_residual(eq_gamma, eq_ns, eq_v);
    if (*ladder) return cmd_convergence_ladder(ladder_config, ladder_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
