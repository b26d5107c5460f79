#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "valuegrad/core.hpp"
#include "valuegrad/problems.hpp"
#include "valuegrad/solvers.hpp"

namespace valuegrad {

enum class EstimatorKind { AnG, AuG, IG, DG, FD };

std::string to_string(EstimatorKind e);

/// g^(k)(u) for k = 0..K; `final` is the last entry. `flagged` marks an
/// estimate produced under a failed sub-solve (CG cap, inner non-convergence).
struct GradientEstimate {
  EstimatorKind method = EstimatorKind::AnG;
  std::vector<Vector> per_iteration;
  Vector final;
  bool flagged = false;
  std::string note;
};

/// Forward-mode Jacobian D_u x^(k) (N x P) and its predecessor.
struct SensitivityState {
  Matrix J;
  Matrix J_prev;
};

/// Pre-prox point of ISTA / iPiasco at x with predecessor x_prev.
Vector pre_prox_point(const PrimalObjective& obj, const Vector& x, const Vector& x_prev, double tau,
                      double beta);

/// Chain rule through one solver step starting at x (predecessor x_prev):
///   GD:        J+ = J - tau (H_xx J + H_xu)
///   HeavyBall: J+ = J - tau (H_xx J + H_xu) + beta (J - J_prev)
///   ISTA / iPiasco: the same inner recursion left-multiplied by the diagonal
///   derivative of the prox at the pre-prox point.
SensitivityState sensitivity_step(const PrimalObjective& obj, Method method, const Vector& x,
                                  const Vector& x_prev, const SensitivityState& state, double tau, double beta);

/// A primal solver trace together with D_u x^(k) for every stored iterate.
struct UnrolledRun {
  Method method = Method::GD;
  double tau = 0.0;
  double beta = 0.0;
  IterateTrace trace;
  std::vector<Matrix> jacobians;
};

/// Runs GD, HeavyBall, ISTA or iPiasco on x -> f(x, u) from x0 (independent
/// of u, so J^(0) = 0) and propagates sensitivities alongside.
UnrolledRun unroll_primal(const PrimalObjective& obj, Method method, double tau, double beta, int iterations,
                          const Vector& x0);

/// g1^(k) = grad_u f(x^(k), u).
GradientEstimate analytic_estimator(const PrimalObjective& obj, const IterateTrace& trace);

/// g2^(k) = J^(k)^T grad_x f(x^(k), u) + grad_u f(x^(k), u). For a prox step
/// the k-subgradient at x^(k) is the one certified by prox optimality,
/// (z - x^(k)) / tau with z the pre-prox point.
GradientEstimate automatic_estimator(const PrimalObjective& obj, const UnrolledRun& run);

/// g3 = -H_xu^T w + grad_u f with H_xx w = grad_x f solved by CG
/// (relative tolerance 1e-12, at most 5N steps; hitting the cap flags the
/// estimate). For nonsmooth k the a.e. Hessian and the subgradient
/// lambda x + gamma sign(x) are used.
GradientEstimate implicit_estimator(const PrimalObjective& obj, const Vector& x);
GradientEstimate implicit_estimator(const PrimalObjective& obj, const IterateTrace& trace);

/// g4^(k) = y^(k) from a solver run on the dual objective starting at y0
/// (zero by default). Supported methods: GD, HeavyBall (smooth duals), ISTA,
/// FISTA, iPiasco, PDHG, and CG (quadratic duals).
GradientEstimate dual_estimator(const DualObjective& dual, const SolverConfig& cfg,
                                const std::optional<Vector>& y0 = std::nullopt);

/// L and m of the dual's smooth part plus the prox part's strong convexity.
struct DualSteps {
  double L;
  double m;
};
DualSteps dual_step_constants(const DualObjective& dual);

struct ValueSolve {
  double value = 0.0;
  Vector x;
  bool converged = true;
  int iterations = 0;
};

struct InnerSolveOptions {
  int budget = 10000;
  double tolerance = 1e-12;
};

/// p(u) = inf_x f(x, u). Closed form when h and k are both scaled squared
/// norms; otherwise strongly convex FISTA on the primal with stopping on
/// ||x+ - x|| <= tolerance * (1 + ||x||).
ValueSolve value_function(const StructuredProblem& pr, const Vector& u, const InnerSolveOptions& opts = {},
                          const std::optional<Vector>& warm_start = std::nullopt);

struct FdOptions {
  /// Fixed step; when unset, eps_i = 1e-5 * (1 + |u_i|).
  std::optional<double> eps;
  InnerSolveOptions inner;
};

/// Central differences of an arbitrary value function.
GradientEstimate fd_oracle(const std::function<double(const Vector&)>& p, const Vector& u,
                           const std::optional<double>& eps = std::nullopt);

/// Central differences of p(u) with inner solves warm-started from the
/// solution at u. Flags the estimate if any inner solve fails to converge.
GradientEstimate fd_oracle(const StructuredProblem& pr, const Vector& u, const FdOptions& opts = {});

/// ||g^(k) - truth|| for every k.
std::vector<double> error_trace(const GradientEstimate& est, const Vector& truth);

}  // namespace valuegrad
