#include "valuegrad/estimators.hpp"

#include <cmath>

namespace valuegrad {

std::string to_string(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::AnG: return "AnG";
    case EstimatorKind::AuG: return "AuG";
    case EstimatorKind::IG: return "IG";
    case EstimatorKind::DG: return "DG";
    case EstimatorKind::FD: return "FD";
  }
  return "unknown";
}

namespace {

bool uses_prox(Method m) { return m == Method::ISTA || m == Method::iPiasco; }

void finish(GradientEstimate& est) {
  if (est.per_iteration.empty()) throw InvalidInput("estimator: empty trace");
  est.final = est.per_iteration.back();
}

}  // namespace

Vector pre_prox_point(const PrimalObjective& obj, const Vector& x, const Vector& x_prev, double tau,
                      double beta) {
  Vector z = x - tau * obj.smooth_grad(x);
  if (beta != 0.0) z += beta * (x - x_prev);
  return z;
}

SensitivityState sensitivity_step(const PrimalObjective& obj, Method method, const Vector& x,
                                  const Vector& x_prev, const SensitivityState& state, double tau,
                                  double beta) {
  const bool prox_method = uses_prox(method);
  if (!prox_method && method != Method::GD && method != Method::HeavyBall) {
    throw InvalidInput("sensitivity_step: unsupported method " + to_string(method));
  }
  if (!prox_method && obj.has_prox_part()) {
    throw InvalidInput("sensitivity_step: " + to_string(method) + " needs a smooth objective");
  }
  const double momentum = (method == Method::HeavyBall || method == Method::iPiasco) ? beta : 0.0;
  Matrix next = state.J - tau * (obj.hessian_xx(x) * state.J + obj.hessian_xu(x));
  if (momentum != 0.0) next += momentum * (state.J - state.J_prev);
  if (prox_method) {
    const Vector z = pre_prox_point(obj, x, x_prev, tau, momentum);
    next = obj.prox_jacobian_diagonal(tau, z).asDiagonal() * next;
  }
  return {std::move(next), state.J};
}

UnrolledRun unroll_primal(const PrimalObjective& obj, Method method, double tau, double beta, int iterations,
                          const Vector& x0) {
  SolverConfig cfg;
  cfg.method = method;
  cfg.tau = tau;
  cfg.beta = beta;
  cfg.iterations = iterations;
  const GradOracle g = [&](const Vector& x) { return obj.smooth_grad(x); };
  const ProxOracle p = [&](double t, const Vector& z) { return obj.prox(t, z); };
  const ObjectiveOracle f = [&](const Vector& x) { return obj.value(x); };

  UnrolledRun run;
  run.method = method;
  run.tau = tau;
  run.beta = beta;
  switch (method) {
    case Method::GD:
      if (obj.has_prox_part()) throw InvalidInput("unroll_primal: GD needs a smooth objective");
      run.trace = gradient_descent(g, x0, cfg, f);
      break;
    case Method::HeavyBall:
      if (obj.has_prox_part()) throw InvalidInput("unroll_primal: HeavyBall needs a smooth objective");
      run.trace = heavy_ball(g, x0, cfg, f);
      break;
    case Method::ISTA:
      run.trace = ista(g, p, x0, cfg, f);
      break;
    case Method::iPiasco:
      run.trace = ipiasco(g, p, x0, cfg, f);
      break;
    default:
      throw InvalidInput("unroll_primal: unsupported method " + to_string(method));
  }

  const auto& xs = run.trace.points;
  const auto N = obj.problem().N();
  const auto P = obj.problem().P();
  SensitivityState state{Matrix::Zero(N, P), Matrix::Zero(N, P)};
  run.jacobians.reserve(xs.size());
  run.jacobians.push_back(state.J);
  for (size_t k = 0; k + 1 < xs.size(); ++k) {
    const Vector& prev = k == 0 ? xs[0] : xs[k - 1];
    state = sensitivity_step(obj, method, xs[k], prev, state, tau, beta);
    run.jacobians.push_back(state.J);
  }
  return run;
}

GradientEstimate analytic_estimator(const PrimalObjective& obj, const IterateTrace& trace) {
  GradientEstimate est;
  est.method = EstimatorKind::AnG;
  est.per_iteration.reserve(trace.points.size());
  for (const auto& x : trace.points) est.per_iteration.push_back(obj.grad_u(x));
  finish(est);
  return est;
}

GradientEstimate automatic_estimator(const PrimalObjective& obj, const UnrolledRun& run) {
  const auto& xs = run.trace.points;
  if (xs.size() != run.jacobians.size()) {
    throw InvalidInput("automatic_estimator: trace and sensitivities differ in length");
  }
  const bool prox_method = uses_prox(run.method) && obj.has_prox_part();
  const double momentum = run.method == Method::iPiasco ? run.beta : 0.0;
  GradientEstimate est;
  est.method = EstimatorKind::AuG;
  est.per_iteration.reserve(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    Vector gx;
    if (prox_method && k > 0) {
      const Vector& before = k >= 2 ? xs[k - 2] : xs[0];
      const Vector z = pre_prox_point(obj, xs[k - 1], before, run.tau, momentum);
      gx = obj.smooth_grad(xs[k]) + (z - xs[k]) / run.tau;
    } else {
      gx = obj.grad_x(xs[k]);
    }
    est.per_iteration.push_back(run.jacobians[k].transpose() * gx + obj.grad_u(xs[k]));
  }
  finish(est);
  return est;
}

GradientEstimate implicit_estimator(const PrimalObjective& obj, const Vector& x) {
  const Matrix H = obj.hessian_xx(x, /*include_k=*/true);
  const Vector rhs = obj.grad_x(x);
  SolverConfig cfg;
  cfg.method = Method::CG;
  cfg.iterations = 5 * obj.problem().N();
  cfg.stop_tolerance = 1e-12;
  cfg.record_trace = false;

  GradientEstimate est;
  est.method = EstimatorKind::IG;
  Vector w = Vector::Zero(rhs.size());
  try {
    const IterateTrace t = conjugate_gradient([&](const Vector& p) -> Vector { return H * p; }, rhs, w, cfg);
    w = t.last();
    const double residual = (rhs - H * w).norm();
    if (t.iterations_run >= cfg.iterations && residual > cfg.stop_tolerance * rhs.norm()) {
      est.flagged = true;
      est.note = "CG iteration cap reached";
    }
  } catch (const SolverBreakdown& e) {
    est.flagged = true;
    est.note = std::string("estimator inapplicable: ") + e.what();
  }
  est.per_iteration.push_back(-obj.hessian_xu(x).transpose() * w + obj.grad_u(x));
  finish(est);
  return est;
}

GradientEstimate implicit_estimator(const PrimalObjective& obj, const IterateTrace& trace) {
  GradientEstimate est;
  est.method = EstimatorKind::IG;
  est.per_iteration.reserve(trace.points.size());
  for (const auto& x : trace.points) {
    GradientEstimate one = implicit_estimator(obj, x);
    if (one.flagged) {
      est.flagged = true;
      est.note = one.note;
    }
    est.per_iteration.push_back(std::move(one.final));
  }
  finish(est);
  return est;
}

DualSteps dual_step_constants(const DualObjective& dual) {
  return {dual.smooth_lipschitz(), dual.smooth_strong_convexity() + dual.prox_strong_convexity()};
}

GradientEstimate dual_estimator(const DualObjective& dual, const SolverConfig& cfg, const std::optional<Vector>& y0) {
  const StructuredProblem& pr = dual.owner();
  const Vector start = y0 ? *y0 : Vector(Vector::Zero(pr.P()));
  const GradOracle g = [&](const Vector& y) { return dual.smooth_grad(y); };
  const ProxOracle p = [&](double t, const Vector& z) { return dual.prox(t, z); };
  const ObjectiveOracle f = [&](const Vector& y) { return dual.value(y); };

  IterateTrace trace;
  switch (cfg.method) {
    case Method::GD:
      if (dual.has_prox_part()) throw InvalidInput("dual_estimator: GD needs a smooth dual");
      trace = gradient_descent(g, start, cfg, f);
      break;
    case Method::HeavyBall:
      if (dual.has_prox_part()) throw InvalidInput("dual_estimator: HeavyBall needs a smooth dual");
      trace = heavy_ball(g, start, cfg, f);
      break;
    case Method::ISTA:
      trace = ista(g, p, start, cfg, f);
      break;
    case Method::FISTA:
      trace = fista(g, p, start, cfg, f);
      break;
    case Method::iPiasco:
      trace = ipiasco(g, p, start, cfg, f);
      break;
    case Method::CG: {
      if (!pr.h().holds<SqL2>() || !pr.k().holds<SqL2>()) {
        throw InvalidInput("dual_estimator: CG needs a quadratic dual (h and k scaled squared norms)");
      }
      const Vector offset = dual.smooth_grad(Vector::Zero(pr.P()));
      const LinearOperator Q = [&](const Vector& y) -> Vector { return dual.smooth_grad(y) - offset; };
      trace = conjugate_gradient(Q, -offset, start, cfg);
      break;
    }
    case Method::PDHG: {
      const Matrix& A = pr.A();
      const FunctionSpec h_conj = conjugate(pr.h());
      const Vector shift_g = pr.b() + dual.u();
      const Vector shift_f = pr.c() - dual.v();
      PdhgProblem sp;
      sp.forward = [&](const Vector& y) -> Vector { return A.transpose() * y; };
      sp.adjoint = [&](const Vector& x) -> Vector { return A * x; };
      sp.op_norm = operator_norm(A);
      sp.prox_g = [&](double t, const Vector& z) { return prox(h_conj, t, z + t * shift_g); };
      sp.prox_fstar = [&](double s, const Vector& w) { return prox(pr.k(), s, w - s * shift_f); };
      sp.sc_g = smoothness_profile(h_conj).m;
      sp.sc_fstar = smoothness_profile(pr.k()).m;
      trace = pdhg(sp, start, Vector::Zero(pr.N()), cfg, f);
      break;
    }
  }

  GradientEstimate est;
  est.method = EstimatorKind::DG;
  est.per_iteration = std::move(trace.points);
  finish(est);
  return est;
}

ValueSolve value_function(const StructuredProblem& pr, const Vector& u, const InnerSolveOptions& opts,
                          const std::optional<Vector>& warm_start) {
  ValueSolve out;
  if (pr.h().holds<SqL2>() && pr.k().holds<SqL2>()) {
    const double s = pr.h().as<SqL2>().scale;
    const double lam = pr.k().as<SqL2>().scale;
    const Matrix& A = pr.A();
    const Matrix H = s * A.transpose() * A + lam * Matrix::Identity(pr.N(), pr.N());
    out.x = H.llt().solve(s * A.transpose() * (pr.b() + u) - pr.c());
    out.value = primal_value(pr, out.x, u);
    return out;
  }
  const PrimalObjective obj(pr, u);
  SolverConfig cfg;
  cfg.method = Method::FISTA;
  cfg.tau = 1.0 / obj.smooth_lipschitz();
  cfg.iterations = opts.budget;
  cfg.sc_smooth = obj.smooth_strong_convexity();
  cfg.sc_prox = obj.prox_strong_convexity();
  cfg.record_trace = false;
  const Vector start = warm_start ? *warm_start : Vector(Vector::Zero(pr.N()));
  cfg.stop_tolerance = opts.tolerance * (1.0 + start.norm());
  const IterateTrace t = fista([&](const Vector& x) { return obj.smooth_grad(x); },
                               [&](double tau, const Vector& z) { return obj.prox(tau, z); }, start, cfg);
  out.x = t.last();
  out.iterations = t.iterations_run;
  out.converged = t.iterations_run < opts.budget;
  out.value = obj.value(out.x);
  return out;
}

GradientEstimate fd_oracle(const std::function<double(const Vector&)>& p, const Vector& u,
                           const std::optional<double>& eps) {
  GradientEstimate est;
  est.method = EstimatorKind::FD;
  Vector g(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double h = eps ? *eps : 1e-5 * (1.0 + std::abs(u(i)));
    Vector plus = u;
    Vector minus = u;
    plus(i) += h;
    minus(i) -= h;
    g(i) = (p(plus) - p(minus)) / (2.0 * h);
  }
  est.per_iteration.push_back(g);
  finish(est);
  return est;
}

GradientEstimate fd_oracle(const StructuredProblem& pr, const Vector& u, const FdOptions& opts) {
  const ValueSolve centre = value_function(pr, u, opts.inner);
  bool converged = centre.converged;
  const auto p = [&](const Vector& w) {
    const ValueSolve s = value_function(pr, w, opts.inner, centre.x);
    converged = converged && s.converged;
    return s.value;
  };
  GradientEstimate est = fd_oracle(p, u, opts.eps);
  if (!converged) {
    est.flagged = true;
    est.note = "inner solve did not converge within budget";
  }
  return est;
}

std::vector<double> error_trace(const GradientEstimate& est, const Vector& truth) {
  std::vector<double> out;
  out.reserve(est.per_iteration.size());
  for (const auto& g : est.per_iteration) {
    if (g.size() != truth.size()) throw InvalidInput("error_trace: dimension mismatch");
    out.push_back((g - truth).norm());
  }
  return out;
}

}  // namespace valuegrad
