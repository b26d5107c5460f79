#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "valuegrad/core.hpp"

namespace valuegrad {

enum class Method { GD, HeavyBall, ISTA, FISTA, iPiasco, PDHG, CG };

std::string to_string(Method m);
bool is_inertial(Method m);

struct SolverConfig {
  Method method = Method::GD;
  double tau = 1.0;
  double beta = 0.0;
  int iterations = 0;
  double pdhg_sigma = 1.0;
  double pdhg_theta = 1.0;
  bool record_trace = true;
  /// Gradient Lipschitz constant of the smooth part, when known. Used to
  /// reject unstable steps at construction time.
  std::optional<double> lipschitz;
  /// FISTA only: strong convexity of the smooth part and of the prox part.
  /// With a positive sum the constant-momentum schedule is used.
  double sc_smooth = 0.0;
  double sc_prox = 0.0;
  /// Oracle-grade solves only: stop once ||x+ - x|| <= stop_tolerance.
  /// Zero runs exactly `iterations` steps.
  double stop_tolerance = 0.0;
  /// CG only: reorthogonalize residuals and conjugate each direction against
  /// all previous ones. Costs O(k n) extra per step.
  bool cg_reorthogonalize = true;

  void validate() const;
};

/// Iterates x^(0..K) (or only the last one with record_trace = false) and the
/// objective value at each stored point when an objective oracle is supplied.
struct IterateTrace {
  std::vector<Vector> points;
  std::vector<double> objective;
  /// PDHG: last iterate of the companion (maximized) variable.
  std::optional<Vector> companion;
  int iterations_run = 0;

  const Vector& last() const { return points.back(); }
};

using GradOracle = std::function<Vector(const Vector&)>;
using ProxOracle = std::function<Vector(double tau, const Vector&)>;
using ObjectiveOracle = std::function<double(const Vector&)>;
using LinearOperator = std::function<Vector(const Vector&)>;

/// Step sizes tuned to an L-smooth, m-strongly convex objective.
struct TunedSteps {
  double gd_tau;     // 2 / (L + m)
  double hb_tau;     // 4 / (sqrt(L) + sqrt(m))^2
  double hb_beta;    // ((sqrt(L) - sqrt(m)) / (sqrt(L) + sqrt(m)))^2
};
TunedSteps tuned_steps(double L, double m);

IterateTrace gradient_descent(const GradOracle& grad, const Vector& x0, const SolverConfig& cfg,
                              const ObjectiveOracle& objective = {});

/// x+ = x - tau grad(x) + beta (x - x-), with x^(-1) = x^(0).
IterateTrace heavy_ball(const GradOracle& grad, const Vector& x0, const SolverConfig& cfg,
                        const ObjectiveOracle& objective = {});

/// x+ = prox(tau, x - tau grad(x)).
IterateTrace ista(const GradOracle& smooth_grad, const ProxOracle& prox_step, const Vector& x0,
                  const SolverConfig& cfg, const ObjectiveOracle& objective = {});

/// Accelerated proximal gradient. With sc_smooth + sc_prox > 0 the momentum is
/// the constant (1 - sqrt(q)) / (1 + sqrt(q)), q = tau mu / (1 + tau sc_prox);
/// otherwise the t_k schedule without restarts.
IterateTrace fista(const GradOracle& smooth_grad, const ProxOracle& prox_step, const Vector& x0,
                   const SolverConfig& cfg, const ObjectiveOracle& objective = {});

/// Inertial proximal gradient: x+ = prox(tau, x - tau grad(x) + beta (x - x-)).
IterateTrace ipiasco(const GradOracle& smooth_grad, const ProxOracle& prox_step, const Vector& x0,
                     const SolverConfig& cfg, const ObjectiveOracle& objective = {});

/// Saddle problem min_y max_x <K y, x> + g(y) - fstar(x). Each step
///   x+ = prox_fstar(sigma, x + sigma K ybar)
///   y+ = prox_g(tau, y - tau K^T x+)
///   ybar = y+ + theta (y+ - y)
/// The trace holds y; `companion` holds the final x.
struct PdhgProblem {
  LinearOperator forward;   // K : R^P -> R^N
  LinearOperator adjoint;   // K^T
  double op_norm;           // ||K||
  ProxOracle prox_g;
  ProxOracle prox_fstar;
  /// Strong convexity of g and fstar. Both positive selects the linearly
  /// convergent constant-step variant; only g positive selects the
  /// accelerated schedule; neither runs the fixed (tau, sigma, theta) steps.
  double sc_g = 0.0;
  double sc_fstar = 0.0;
};
IterateTrace pdhg(const PdhgProblem& problem, const Vector& y0, const Vector& x0, const SolverConfig& cfg,
                  const ObjectiveOracle& objective = {});

/// Conjugate gradient for min y^T Q y / 2 - r^T y. Stops after cfg.iterations
/// steps or when the residual norm drops to cfg.stop_tolerance * ||r - Q y0||.
/// Throws SolverBreakdown when p^T Q p <= 0.
IterateTrace conjugate_gradient(const LinearOperator& Q, const Vector& r, const Vector& y0,
                                const SolverConfig& cfg);

}  // namespace valuegrad
