#include "valuegrad/solvers.hpp"

#include <cmath>

#include "valuegrad/errors.hpp"

namespace valuegrad {

std::string to_string(Method m) {
  switch (m) {
    case Method::GD: return "GD";
    case Method::HeavyBall: return "HeavyBall";
    case Method::ISTA: return "ISTA";
    case Method::FISTA: return "FISTA";
    case Method::iPiasco: return "iPiasco";
    case Method::PDHG: return "PDHG";
    case Method::CG: return "CG";
  }
  return "unknown";
}

bool is_inertial(Method m) {
  return m == Method::HeavyBall || m == Method::iPiasco || m == Method::FISTA;
}

void SolverConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidInput("SolverConfig: tau must be > 0");
  if (!(beta >= 0.0 && beta < 1.0)) throw InvalidInput("SolverConfig: beta must lie in [0, 1)");
  if (iterations < 0) throw InvalidInput("SolverConfig: iterations must be >= 0");
  if (!(pdhg_sigma > 0.0)) throw InvalidInput("SolverConfig: pdhg_sigma must be > 0");
  if (!(pdhg_theta >= 0.0 && pdhg_theta <= 1.0)) throw InvalidInput("SolverConfig: pdhg_theta must lie in [0, 1]");
  if (stop_tolerance < 0.0) throw InvalidInput("SolverConfig: stop_tolerance must be >= 0");
  if (lipschitz && std::isfinite(*lipschitz) && *lipschitz > 0.0) {
    const double L = *lipschitz;
    const double slack = 1.0 + 1e-12;
    switch (method) {
      case Method::GD:
      case Method::ISTA:
        if (tau > slack * 2.0 / L) throw InvalidInput("SolverConfig: tau exceeds 2/L");
        break;
      case Method::HeavyBall:
      case Method::iPiasco:
        if (tau > slack * 2.0 * (1.0 + beta) / L) throw InvalidInput("SolverConfig: tau exceeds 2(1+beta)/L");
        break;
      case Method::FISTA:
        if (tau > slack / L) throw InvalidInput("SolverConfig: tau exceeds 1/L");
        break;
      default:
        break;
    }
  }
}

TunedSteps tuned_steps(double L, double m) {
  if (!(L > 0.0) || !std::isfinite(L) || m < 0.0 || m > L) {
    throw InvalidInput("tuned_steps: need 0 <= m <= L < inf, L > 0");
  }
  const double sl = std::sqrt(L);
  const double sm = std::sqrt(m);
  const double ratio = (sl - sm) / (sl + sm);
  return {2.0 / (L + m), 4.0 / ((sl + sm) * (sl + sm)), ratio * ratio};
}

namespace {

// Shared bookkeeping: stores points when record_trace is on, keeps the last
// one otherwise, and evaluates the objective oracle on stored points.
class TraceBuilder {
public:
  TraceBuilder(const SolverConfig& cfg, const ObjectiveOracle& objective) : cfg_(cfg), objective_(objective) {
    if (cfg.record_trace) trace_.points.reserve(static_cast<size_t>(cfg.iterations) + 1);
  }

  void push(const Vector& x) {
    const bool append = cfg_.record_trace || trace_.points.empty();
    if (append) {
      trace_.points.push_back(x);
    } else {
      trace_.points.back() = x;
    }
    if (objective_) {
      const double value = objective_(x);
      if (append) {
        trace_.objective.push_back(value);
      } else {
        trace_.objective.back() = value;
      }
    }
  }

  bool converged(const Vector& next, const Vector& prev) const {
    return cfg_.stop_tolerance > 0.0 && (next - prev).norm() <= cfg_.stop_tolerance;
  }

  IterateTrace finish(int run) {
    trace_.iterations_run = run;
    return std::move(trace_);
  }

private:
  const SolverConfig& cfg_;
  const ObjectiveOracle& objective_;
  IterateTrace trace_;
};

Vector identity_prox(double, const Vector& z) { return z; }

}  // namespace

IterateTrace gradient_descent(const GradOracle& grad, const Vector& x0, const SolverConfig& cfg,
                              const ObjectiveOracle& objective) {
  cfg.validate();
  TraceBuilder tb(cfg, objective);
  Vector x = x0;
  tb.push(x);
  int k = 0;
  for (; k < cfg.iterations; ++k) {
    Vector next = x - cfg.tau * grad(x);
    const bool done = tb.converged(next, x);
    x = std::move(next);
    tb.push(x);
    if (done) {
      ++k;
      break;
    }
  }
  return tb.finish(k);
}

IterateTrace heavy_ball(const GradOracle& grad, const Vector& x0, const SolverConfig& cfg,
                        const ObjectiveOracle& objective) {
  return ipiasco(grad, identity_prox, x0, cfg, objective);
}

IterateTrace ista(const GradOracle& smooth_grad, const ProxOracle& prox_step, const Vector& x0,
                  const SolverConfig& cfg, const ObjectiveOracle& objective) {
  SolverConfig plain = cfg;
  plain.beta = 0.0;
  return ipiasco(smooth_grad, prox_step, x0, plain, objective);
}

IterateTrace ipiasco(const GradOracle& smooth_grad, const ProxOracle& prox_step, const Vector& x0,
                     const SolverConfig& cfg, const ObjectiveOracle& objective) {
  cfg.validate();
  TraceBuilder tb(cfg, objective);
  Vector x = x0;
  Vector prev = x0;
  tb.push(x);
  int k = 0;
  for (; k < cfg.iterations; ++k) {
    Vector z = x - cfg.tau * smooth_grad(x);
    if (cfg.beta != 0.0) z += cfg.beta * (x - prev);
    Vector next = prox_step(cfg.tau, z);
    const bool done = tb.converged(next, x);
    prev = std::move(x);
    x = std::move(next);
    tb.push(x);
    if (done) {
      ++k;
      break;
    }
  }
  return tb.finish(k);
}

IterateTrace fista(const GradOracle& smooth_grad, const ProxOracle& prox_step, const Vector& x0,
                   const SolverConfig& cfg, const ObjectiveOracle& objective) {
  cfg.validate();
  TraceBuilder tb(cfg, objective);
  const double mu = cfg.sc_smooth + cfg.sc_prox;
  double constant_momentum = -1.0;
  if (mu > 0.0) {
    const double q = std::min(1.0, cfg.tau * mu / (1.0 + cfg.tau * cfg.sc_prox));
    const double sq = std::sqrt(q);
    constant_momentum = (1.0 - sq) / (1.0 + sq);
  }
  Vector x = x0;
  Vector prev = x0;
  double t = 1.0;
  tb.push(x);
  int k = 0;
  for (; k < cfg.iterations; ++k) {
    double momentum;
    if (constant_momentum >= 0.0) {
      momentum = constant_momentum;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      momentum = (t - 1.0) / t_next;
      t = t_next;
    }
    const Vector y = x + momentum * (x - prev);
    Vector next = prox_step(cfg.tau, y - cfg.tau * smooth_grad(y));
    const bool done = tb.converged(next, x);
    prev = std::move(x);
    x = std::move(next);
    tb.push(x);
    if (done) {
      ++k;
      break;
    }
  }
  return tb.finish(k);
}

IterateTrace pdhg(const PdhgProblem& problem, const Vector& y0, const Vector& x0, const SolverConfig& cfg,
                  const ObjectiveOracle& objective) {
  cfg.validate();
  const double L = problem.op_norm;
  if (!(L >= 0.0) || !std::isfinite(L)) throw InvalidInput("pdhg: operator norm must be finite");

  double tau = cfg.tau;
  double sigma = cfg.pdhg_sigma;
  double theta = cfg.pdhg_theta;
  const bool both_sc = problem.sc_g > 0.0 && problem.sc_fstar > 0.0;
  const bool accelerate = problem.sc_g > 0.0 && !both_sc;
  if (both_sc && L > 0.0) {
    const double mu = 2.0 * std::sqrt(problem.sc_g * problem.sc_fstar) / L;
    tau = mu / (2.0 * problem.sc_g);
    sigma = mu / (2.0 * problem.sc_fstar);
    theta = 1.0 / (1.0 + mu);
  } else if (tau * sigma * L * L > 1.0 + 1e-12) {
    throw InvalidInput("pdhg: step product tau * sigma * ||K||^2 exceeds 1");
  }

  TraceBuilder tb(cfg, objective);
  Vector y = y0;
  Vector ybar = y0;
  Vector x = x0;
  tb.push(y);
  int k = 0;
  for (; k < cfg.iterations; ++k) {
    x = problem.prox_fstar(sigma, x + sigma * problem.forward(ybar));
    Vector next = problem.prox_g(tau, y - tau * problem.adjoint(x));
    if (accelerate) {
      theta = 1.0 / std::sqrt(1.0 + 2.0 * problem.sc_g * tau);
      tau *= theta;
      sigma /= theta;
    }
    ybar = next + theta * (next - y);
    const bool done = tb.converged(next, y);
    y = std::move(next);
    tb.push(y);
    if (done) {
      ++k;
      break;
    }
  }
  IterateTrace out = tb.finish(k);
  out.companion = x;
  return out;
}

IterateTrace conjugate_gradient(const LinearOperator& Q, const Vector& r, const Vector& y0,
                                const SolverConfig& cfg) {
  if (cfg.iterations < 0) throw InvalidInput("conjugate_gradient: iterations must be >= 0");
  const ObjectiveOracle objective = [&](const Vector& y) { return 0.5 * y.dot(Q(y)) - r.dot(y); };
  TraceBuilder tb(cfg, {});
  Vector y = y0;
  Vector res = r - Q(y);
  Vector p = res;
  double rr = res.squaredNorm();
  const double initial_norm = std::sqrt(rr);
  const double stop = cfg.stop_tolerance * initial_norm;
  // Full reorthogonalization keeps residuals orthogonal and directions
  // Q-conjugate in floating point, so termination within dim steps survives
  // ill-conditioning.
  std::vector<Vector> dirs, qdirs, basis;
  Vector res_prev = res;
  tb.push(y);
  int k = 0;
  for (; k < cfg.iterations; ++k) {
    if (rr == 0.0 || std::sqrt(rr) <= stop) break;
    if (cfg.cg_reorthogonalize && basis.size() >= static_cast<size_t>(r.size())) break;
    const Vector Qp = Q(p);
    const double curvature = p.dot(Qp);
    // Residual at roundoff level: the Krylov space is exhausted.
    if (!(curvature > 0.0) && std::sqrt(rr) <= 1e-10 * initial_norm) break;
    if (!(curvature > 0.0)) {
      throw SolverBreakdown("conjugate_gradient: p^T Q p <= 0, operator is not positive definite");
    }
    const double alpha = res.dot(p) / curvature;
    y += alpha * p;
    res -= alpha * Qp;
    if (cfg.cg_reorthogonalize) {
      dirs.push_back(p);
      qdirs.push_back(Qp / curvature);
      basis.push_back(res_prev / std::sqrt(rr));
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) res -= q.dot(res) * q;
      }
      p = res;
      for (size_t i = 0; i < dirs.size(); ++i) p -= qdirs[i].dot(res) * dirs[i];
    } else {
      p = res + (res.squaredNorm() / rr) * p;
    }
    rr = res.squaredNorm();
    res_prev = res;
    tb.push(y);
  }
  // Fixed-budget runs keep K + 1 points: once the Krylov space is exhausted
  // the remaining iterates equal the solution.
  if (cfg.stop_tolerance == 0.0) {
    for (int j = k; j < cfg.iterations; ++j) tb.push(y);
  }
  IterateTrace out = tb.finish(k);
  out.objective.clear();
  for (const auto& point : out.points) out.objective.push_back(objective(point));
  return out;
}

}  // namespace valuegrad
