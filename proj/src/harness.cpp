#include "valuegrad/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "valuegrad/estimators.hpp"
#include "valuegrad/problems.hpp"

namespace valuegrad {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InvalidInput("config: bad value '" + v + "' for key '" + key + "'");
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& raw) {
  std::vector<int> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (key == "problems" && (item[0] == 'f' || item[0] == 'F')) item = item.substr(1);
    out.push_back(parse_number<int>(key, item));
  }
  if (out.empty()) throw InvalidInput("config: empty list for key '" + key + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw InvalidInput("config: bad boolean '" + v + "' for key '" + key + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

namespace {

void validate_config(const ExperimentConfig& cfg) {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidInput(what);
  };
  require(cfg.N >= 1, "N must be positive");
  require(!cfg.P_list.empty(), "P list is empty");
  for (int P : cfg.P_list) require(P >= 1, "P must be positive");
  require(!cfg.problems.empty(), "problem list is empty");
  for (int p : cfg.problems) require(p >= 1 && p <= 4, "problems must be in 1..4");
  require(cfg.iterations >= 0, "iterations must be >= 0");
  require(cfg.lambda > 0.0 && std::isfinite(cfg.lambda), "lambda must be positive");
  require(cfg.gamma >= 0.0 && std::isfinite(cfg.gamma), "gamma must be >= 0");
  require(cfg.delta > 0.0 && std::isfinite(cfg.delta), "delta must be positive");
  require(cfg.cond_ratio >= 1.0 && std::isfinite(cfg.cond_ratio), "cond must be >= 1");
  require(cfg.truth_iterations >= 1, "truth_iters must be positive");
  require(cfg.truth_tolerance > 0.0, "truth_tol must be positive");
  require(cfg.threads >= 0, "threads must be >= 0");
}

}  // namespace

void apply_config_value(ExperimentConfig& cfg, const std::string& key_raw, const std::string& value) {
  const std::string key = trim(key_raw);
  ExperimentConfig next = cfg;
  if (key == "n") {
    next.N = parse_number<int>(key, value);
  } else if (key == "p") {
    next.P_list = parse_int_list(key, value);
  } else if (key == "problems") {
    next.problems = parse_int_list(key, value);
  } else if (key == "seed") {
    next.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "iters") {
    next.iterations = parse_number<int>(key, value);
  } else if (key == "lambda") {
    next.lambda = parse_number<double>(key, value);
  } else if (key == "gamma") {
    next.gamma = parse_number<double>(key, value);
  } else if (key == "delta") {
    next.delta = parse_number<double>(key, value);
  } else if (key == "cond") {
    next.cond_ratio = parse_number<double>(key, value);
  } else if (key == "out") {
    next.output_dir = trim(value);
  } else if (key == "inertia") {
    const std::string v = trim(value);
    if (v == "both") next.inertia = Inertia::Both;
    else if (v == "on") next.inertia = Inertia::On;
    else if (v == "off") next.inertia = Inertia::Off;
    else throw InvalidInput("config: inertia must be both, on or off");
  } else if (key == "truth_iters") {
    next.truth_iterations = parse_number<int>(key, value);
  } else if (key == "truth_tol") {
    next.truth_tolerance = parse_number<double>(key, value);
  } else if (key == "timing") {
    next.timing = parse_bool(key, value);
  } else if (key == "threads") {
    next.threads = parse_number<int>(key, value);
  } else {
    throw InvalidInput("config: unknown key '" + key + "'");
  }
  try {
    validate_config(next);
  } catch (const InvalidInput& e) {
    throw InvalidInput("config: bad value for '" + key + "': " + e.what());
  }
  cfg = std::move(next);
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("config: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    apply_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

bool record_less(const ErrorRecord& a, const ErrorRecord& b) {
  return std::tie(a.problem, a.P, a.solver, a.estimator, a.iteration) <
         std::tie(b.problem, b.P, b.solver, b.estimator, b.iteration);
}

std::uint64_t cell_seed(std::uint64_t seed, int P) {
  SplitMix64 rng(seed);
  for (int i = 0; i < P; ++i) rng.next();
  return rng.next();
}

// ---------------------------------------------------------------------------

CellResult run_cell(const ExperimentConfig& cfg, int problem, int P) {
  CellResult out;
  out.summary.problem = problem;
  out.summary.P = P;
  const std::string name = "f" + std::to_string(problem);

  const ProblemData data = seeded_problem_data(cfg.N, P, cell_seed(cfg.seed, P), cfg.cond_ratio);
  const StructuredProblem pr = make_experiment_problem(problem, data.A, cfg.lambda, cfg.gamma, cfg.delta);
  const Vector& u = data.u;
  const PrimalObjective obj(pr, u);
  const DualObjective dual = dual_objective(pr, u);

  // Ground truth.
  Vector xstar;
  Vector gradp;
  if (problem == 1) {
    const ClosedFormF1 cf = closed_form_f1(data.A, cfg.lambda, u);
    xstar = cf.xstar;
    gradp = cf.gradp;
  } else {
    xstar = value_function(pr, u, {cfg.truth_iterations, 1e-14}).x;
    SolverConfig tc;
    tc.method = Method::FISTA;
    tc.tau = 1.0 / dual.smooth_lipschitz();
    tc.iterations = cfg.truth_iterations;
    tc.sc_smooth = dual.smooth_strong_convexity();
    tc.sc_prox = dual.prox_strong_convexity();
    tc.record_trace = false;
    tc.stop_tolerance = 1e-15;
    gradp = dual_estimator(dual, tc).final;
    FdOptions fo;
    fo.inner.budget = cfg.truth_iterations;
    const GradientEstimate fd = fd_oracle(pr, u, fo);
    out.summary.truth_fd_discrepancy = (fd.final - gradp).cwiseAbs().maxCoeff();
    if (!(out.summary.truth_fd_discrepancy <= cfg.truth_tolerance)) {
      out.summary.ok = false;
      std::ostringstream os;
      os << name << " P=" << P << ": ground truth disagrees with central differences (max-abs "
         << out.summary.truth_fd_discrepancy << " > " << cfg.truth_tolerance << ")";
      out.summary.diagnostic = os.str();
      return out;
    }
  }

  const auto emit = [&](const std::string& solver, const std::string& estimator, const std::vector<double>& errors,
                        std::int64_t wall) {
    for (size_t k = 0; k < errors.size(); ++k) {
      out.records.push_back({name, P, solver, estimator, static_cast<int>(k), errors[k], cfg.timing ? wall : 0});
    }
    out.summary.final_errors[solver + "/" + estimator] = errors.back();
  };

  // Primal families: (proximal) gradient descent and its inertial variant,
  // tuned to the full objective's curvature range.
  const bool prox = obj.has_prox_part();
  const double L = obj.smooth_lipschitz() + (prox ? obj.prox_strong_convexity() : 0.0);
  const double m = obj.smooth_strong_convexity() + obj.prox_strong_convexity();
  const TunedSteps primal_steps = tuned_steps(L, m);
  const DualSteps dc = dual_step_constants(dual);
  const TunedSteps dual_steps = tuned_steps(dc.L, dc.m);

  struct Family {
    Method primal;
    double tau;
    double beta;
    Method dual;
    double dual_tau;
    double dual_beta;
  };
  std::vector<Family> families;
  if (cfg.inertia != Inertia::On) {
    families.push_back({prox ? Method::ISTA : Method::GD, primal_steps.gd_tau, 0.0,
                        dual.has_prox_part() ? Method::ISTA : Method::GD, dual_steps.gd_tau, 0.0});
  }
  if (cfg.inertia != Inertia::Off) {
    families.push_back({prox ? Method::iPiasco : Method::HeavyBall, primal_steps.hb_tau, primal_steps.hb_beta,
                        dual.has_prox_part() ? Method::iPiasco : Method::HeavyBall, dual_steps.hb_tau,
                        dual_steps.hb_beta});
  }

  const Vector x0 = Vector::Zero(pr.N());
  for (const Family& fam : families) {
    const std::string solver = to_string(fam.primal);
    auto t0 = std::chrono::steady_clock::now();
    const UnrolledRun run = unroll_primal(obj, fam.primal, fam.tau, fam.beta, cfg.iterations, x0);
    const std::int64_t unroll_ns = elapsed_ns(t0);
    std::vector<double> primal_err;
    for (const auto& x : run.trace.points) primal_err.push_back((x - xstar).norm());
    emit(solver, "primal", primal_err, unroll_ns);

    t0 = std::chrono::steady_clock::now();
    const GradientEstimate ang = analytic_estimator(obj, run.trace);
    emit(solver, "AnG", error_trace(ang, gradp), elapsed_ns(t0));

    t0 = std::chrono::steady_clock::now();
    const GradientEstimate aug = automatic_estimator(obj, run);
    emit(solver, "AuG", error_trace(aug, gradp), unroll_ns + elapsed_ns(t0));

    t0 = std::chrono::steady_clock::now();
    const GradientEstimate ig = implicit_estimator(obj, run.trace);
    emit(solver, "IG", error_trace(ig, gradp), elapsed_ns(t0));

    SolverConfig dcfg;
    dcfg.method = fam.dual;
    dcfg.tau = fam.dual_tau;
    dcfg.beta = fam.dual_beta;
    dcfg.iterations = cfg.iterations;
    t0 = std::chrono::steady_clock::now();
    const GradientEstimate dg = dual_estimator(dual, dcfg);
    emit(to_string(fam.dual), "DG", error_trace(dg, gradp), elapsed_ns(t0));
  }
  return out;
}

GridResult run_grid(const ExperimentConfig& cfg) {
  try {
    validate_config(cfg);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("run_grid: ") + e.what());
  }
  std::vector<std::pair<int, int>> cells;
  for (int problem : cfg.problems) {
    for (int P : cfg.P_list) cells.emplace_back(problem, P);
  }
  std::vector<CellResult> results(cells.size());
  std::vector<std::string> failures(cells.size());
  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cells.size())));

  std::mutex next_mutex;
  size_t next = 0;
  const auto worker = [&]() {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= cells.size()) return;
        i = next++;
      }
      try {
        results[i] = run_cell(cfg, cells[i].first, cells[i].second);
      } catch (const std::exception& e) {
        results[i].summary = {cells[i].first, cells[i].second, false, e.what(), 0.0, {}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  GridResult grid;
  for (auto& r : results) {
    grid.records.insert(grid.records.end(), r.records.begin(), r.records.end());
    grid.cells.push_back(std::move(r.summary));
  }
  std::sort(grid.records.begin(), grid.records.end(), record_less);
  return grid;
}

void print_summary(const GridResult& result, std::ostream& out) {
  for (const auto& c : result.cells) {
    out << "f" << c.problem << " P=" << c.P << (c.ok ? "" : "  FAILED: " + c.diagnostic) << "\n";
    if (c.problem != 1 && c.ok) {
      out << "  truth vs central differences: " << c.truth_fd_discrepancy << "\n";
    }
    for (const auto& [key, err] : c.final_errors) {
      out << "  " << std::left << std::setw(20) << key << std::scientific << std::setprecision(3) << err
          << std::defaultfloat << "\n";
    }
  }
}

// ---------------------------------------------------------------------------

std::string csv_string(std::vector<ErrorRecord> records) {
  std::sort(records.begin(), records.end(), record_less);
  std::string s = "problem,P,solver,estimator,iteration,error,wall_ns\n";
  for (const auto& r : records) {
    s += r.problem;
    s += ',';
    s += std::to_string(r.P);
    s += ',';
    s += r.solver;
    s += ',';
    s += r.estimator;
    s += ',';
    s += std::to_string(r.iteration);
    s += ',';
    s += format_double(r.error);
    s += ',';
    s += std::to_string(r.wall_ns);
    s += '\n';
  }
  return s;
}

void emit_csv(const std::vector<ErrorRecord>& records, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("emit_csv: cannot open " + path.string() + " for writing");
  const std::string s = csv_string(records);
  f.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!f) throw Error("emit_csv: write failed for " + path.string());
}

std::vector<ErrorRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "problem,P,solver,estimator,iteration,error,wall_ns") {
    throw InvalidInput("parse_csv: missing or unexpected header");
  }
  std::vector<ErrorRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 7) throw InvalidInput("parse_csv: expected 7 fields in '" + line + "'");
    ErrorRecord r;
    r.problem = f[0];
    r.P = parse_number<int>("P", f[1]);
    r.solver = f[2];
    r.estimator = f[3];
    r.iteration = parse_number<int>("iteration", f[4]);
    r.error = parse_number<double>("error", f[5]);
    r.wall_ns = parse_number<std::int64_t>("wall_ns", f[6]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ErrorRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("read_csv: cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace valuegrad
