#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "valuegrad/errors.hpp"
#include "valuegrad/estimators.hpp"
#include "valuegrad/harness.hpp"
#include "valuegrad/problems.hpp"
#include "valuegrad/rates.hpp"
#include "valuegrad/toys.hpp"

namespace valuegrad {

namespace {

// Flags share the config-file keys so that both routes go through the same
// parser; flags are applied after the file.
struct GridFlags {
  std::string config;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app, const std::vector<std::pair<std::string, std::string>>& keys) {
    app->add_option("--config", config, "key = value file applied before flags")->check(CLI::ExistingFile);
    for (const auto& [key, help] : keys) {
      options[key] = app->add_option("--" + key, values[key], help);
    }
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config.empty()) apply_config_file(cfg, config);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) apply_config_value(cfg, key, values.at(key));
    }
    return cfg;
  }
};

const std::vector<std::pair<std::string, std::string>> kGridKeys = {
    {"n", "primal dimension N"},
    {"p", "comma-separated list of parameter dimensions P"},
    {"problems", "comma-separated problem indices (1-4 or f1-f4)"},
    {"seed", "base seed"},
    {"iters", "iterations K"},
    {"lambda", "ridge weight"},
    {"gamma", "l1 weight"},
    {"delta", "Huber threshold"},
    {"cond", "column-scale ratio of A"},
    {"out", "output directory"},
    {"inertia", "both, on or off"},
    {"truth_iters", "ground-truth solve budget"},
    {"threads", "worker threads (0 = hardware)"},
    {"timing", "record wall-clock times (true/false)"},
};

std::string rate_cell(const RateValue& r) {
  if (r.regime == RateRegime::Linear) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", r.omega);
    return buf;
  }
  if (r.regime == RateRegime::AcceleratedSublinear) return "O(1/k^2)";
  if (r.regime == RateRegime::Sublinear) return "O(1/k)";
  return "-";
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  const GridResult grid = run_grid(cfg);
  print_summary(grid, out);
  bool all_ok = true;
  for (const auto& c : grid.cells) all_ok = all_ok && c.ok;
  if (!grid.records.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    const auto csv = std::filesystem::path(cfg.output_dir) / "errors.csv";
    emit_csv(grid.records, csv);
    const auto plots = emit_plots(grid.records, cfg.output_dir);
    out << "wrote " << csv.string() << " and " << plots.size() << " plots\n";
  }
  if (!all_ok) {
    err << "one or more cells failed the ground-truth cross-check\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg, int problem, int P, double tol, int dual_iters, std::ostream& out) {
  const ProblemData data = seeded_problem_data(cfg.N, P, cell_seed(cfg.seed, P), cfg.cond_ratio);
  const StructuredProblem pr = make_experiment_problem(problem, data.A, cfg.lambda, cfg.gamma, cfg.delta);
  const DualObjective dual = dual_objective(pr, data.u);
  SolverConfig sc;
  if (problem == 1) {
    sc.method = Method::CG;
    sc.iterations = P;
    sc.stop_tolerance = 1e-14;
  } else {
    sc.method = Method::FISTA;
    sc.tau = 1.0 / dual.smooth_lipschitz();
    sc.iterations = dual_iters;
    sc.sc_smooth = dual.smooth_strong_convexity();
    sc.sc_prox = dual.prox_strong_convexity();
  }
  sc.record_trace = false;
  const GradientEstimate dg = dual_estimator(dual, sc);
  const GradientEstimate fd = fd_oracle(pr, data.u);
  const double disc = (dg.final - fd.final).cwiseAbs().maxCoeff();
  out << "f" << problem << " N=" << cfg.N << " P=" << P << " dual=" << to_string(sc.method)
      << " max-abs discrepancy DG vs FD: " << std::scientific << std::setprecision(3) << disc << std::defaultfloat
      << " (tolerance " << tol << ")\n";
  const bool ok = disc <= tol && !dg.flagged;
  out << (ok ? "OK" : "MISMATCH") << "\n";
  return ok ? 0 : 1;
}

int cmd_rates(const ExperimentConfig& cfg, bool identity, std::ostream& out) {
  out << std::left << std::setw(8) << "problem" << std::setw(6) << "P" << std::setw(12) << "omega_p"
      << std::setw(12) << "omega_d" << std::setw(12) << "omega_cg" << std::setw(12) << "omega_ista"
      << std::setw(12) << "omega_fista" << "omega_pdhg\n";
  const std::vector<int> Ps = identity ? std::vector<int>{cfg.N} : cfg.P_list;
  for (int problem : cfg.problems) {
    for (int P : Ps) {
      const Matrix A = identity ? Matrix(Matrix::Identity(cfg.N, cfg.N))
                                : seeded_problem_data(cfg.N, P, cell_seed(cfg.seed, P), cfg.cond_ratio).A;
      const StructuredProblem pr = make_experiment_problem(problem, A, cfg.lambda, cfg.gamma, cfg.delta);
      const RateReport r = rate_report(pr);
      out << std::left << std::setw(8) << ("f" + std::to_string(problem)) << std::setw(6) << P << std::setw(12)
          << rate_cell(r.omega_p) << std::setw(12) << rate_cell(r.omega_d) << std::setw(12)
          << rate_cell(r.omega_cg) << std::setw(12) << rate_cell(r.omega_ista) << std::setw(12)
          << rate_cell(r.omega_fista) << rate_cell(r.omega_pdhg) << "\n";
    }
  }
  return 0;
}

int cmd_toy(std::ostream& out) {
  struct Case {
    ToyProblem toy;
    double u;
  };
  const std::vector<Case> cases = {{Exp1{}, 0.5}, {Quad2{1.0, 2.0}, 1.0}, {Exp3{}, 1.5}};
  out << std::left << std::setw(12) << "toy" << std::setw(8) << "u" << std::setw(14) << "truth" << std::setw(14)
      << "AnG" << std::setw(14) << "AuG" << std::setw(14) << "IG" << "DG\n";
  for (const auto& c : cases) {
    ToyRunOptions opts;
    opts.iterations = 1000;
    opts.dual_iterations = 200;
    const ToyRun run = run_toy(c.toy, c.u, opts);
    const auto cell = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.8g", v);
      return std::string(buf);
    };
    out << std::left << std::setw(12) << toy_name(c.toy) << std::setw(8) << cell(c.u) << std::setw(14)
        << cell(run.truth.dp) << std::setw(14) << cell(run.ang.back()) << std::setw(14) << cell(run.aug.back())
        << std::setw(14) << cell(run.ig.back()) << cell(run.dg.back()) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradients of parametric value functions: analytic, unrolled, implicit and dual estimators"};
  app.require_subcommand(1);

  GridFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run the experiment grid and write CSV and SVG output");
  run_flags.attach(run, kGridKeys);

  GridFlags verify_flags;
  int verify_problem = 1;
  int verify_P = 30;
  double verify_tol = 1e-4;
  int verify_iters = 2000;
  CLI::App* verify = app.add_subcommand("verify", "compare the dual estimator with central differences");
  verify_flags.attach(verify, {{"n", "primal dimension N"},
                               {"seed", "base seed"},
                               {"lambda", "ridge weight"},
                               {"gamma", "l1 weight"},
                               {"delta", "Huber threshold"},
                               {"cond", "column-scale ratio of A"}});
  verify->add_option("--problem", verify_problem, "problem index 1-4")->check(CLI::Range(1, 4));
  verify->add_option("--P", verify_P, "parameter dimension")->check(CLI::PositiveNumber);
  verify->add_option("--tol", verify_tol, "max-abs tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--dual-iters", verify_iters, "dual iterations")->check(CLI::PositiveNumber);

  GridFlags rates_flags;
  bool identity = false;
  CLI::App* rates = app.add_subcommand("rates", "print predicted linear-rate factors");
  rates_flags.attach(rates, {{"n", "primal dimension N"},
                             {"p", "comma-separated list of P"},
                             {"problems", "comma-separated problem indices"},
                             {"seed", "base seed"},
                             {"lambda", "ridge weight"},
                             {"gamma", "l1 weight"},
                             {"delta", "Huber threshold"},
                             {"cond", "column-scale ratio of A"}});
  rates->add_flag("--identity", identity, "use A = I (P = N)");

  CLI::App* toy = app.add_subcommand("toy", "run the scalar counterexamples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    // Usage of the subcommand that failed to parse, or the top level.
    const CLI::App* shown = &app;
    for (const CLI::App* sub : app.get_subcommands()) shown = sub;
    err << shown->help();
    return 2;
  }

  try {
    if (*run) return cmd_run(run_flags.resolve(), out, err);
    if (*verify) {
      return cmd_verify(verify_flags.resolve(), verify_problem, verify_P, verify_tol, verify_iters, out);
    }
    if (*rates) return cmd_rates(rates_flags.resolve(), identity, out);
    if (*toy) return cmd_toy(out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace valuegrad
