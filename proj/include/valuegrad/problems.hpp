#pragma once

#include <optional>

#include "valuegrad/core.hpp"
#include "valuegrad/functions.hpp"

namespace valuegrad {

/// f(x, u) = <c, x> + h(b - A x + u) + k(x) with A : R^N -> R^P.
class StructuredProblem {
public:
  StructuredProblem(Vector c, Vector b, Matrix A, FunctionSpec h, FunctionSpec k);

  const Vector& c() const { return c_; }
  const Vector& b() const { return b_; }
  const Matrix& A() const { return A_; }
  const FunctionSpec& h() const { return h_; }
  const FunctionSpec& k() const { return k_; }
  int N() const { return static_cast<int>(A_.cols()); }
  int P() const { return static_cast<int>(A_.rows()); }

  /// Residual b - A x + u fed to h.
  Vector residual(const Vector& x, const Vector& u) const;

private:
  Vector c_;
  Vector b_;
  Matrix A_;
  FunctionSpec h_;
  FunctionSpec k_;
};

double primal_value(const StructuredProblem& pr, const Vector& x, const Vector& u);

/// f*(v, y) = -<b, y> + k*(A^T y - c + v) + h*(y).
double conjugate_value(const StructuredProblem& pr, const Vector& v, const Vector& y);

/// The primal objective x -> f(x, u) split for first-order methods. When k is
/// smooth the whole objective is smooth; otherwise k is the prox part.
/// Requires a smooth h.
class PrimalObjective {
public:
  PrimalObjective(const StructuredProblem& pr, Vector u);

  const StructuredProblem& problem() const { return pr_; }
  const Vector& u() const { return u_; }
  bool has_prox_part() const { return !k_in_smooth_; }

  double value(const Vector& x) const;
  /// Gradient in x of the smooth part.
  Vector smooth_grad(const Vector& x) const;
  /// prox of the nonsmooth part (identity when there is none).
  Vector prox(double tau, const Vector& z) const;
  /// Diagonal derivative of prox at z.
  Vector prox_jacobian_diagonal(double tau, const Vector& z) const;

  /// grad_u f(x, u) = grad h(b - A x + u).
  Vector grad_u(const Vector& x) const;
  /// A subgradient of f(., u) at x: smooth gradient plus, for a nonsmooth k,
  /// lambda x + gamma sign(x) with sign(0) = 0.
  Vector grad_x(const Vector& x) const;
  /// Hessian in x of the smooth part (N x N), using the a.e. Hessian of k
  /// when k is in the smooth part or when `include_k` is set.
  Matrix hessian_xx(const Vector& x, bool include_k = false) const;
  /// Mixed derivative d/du grad_x f (N x P).
  Matrix hessian_xu(const Vector& x) const;

  /// Regularity constants of the smooth part and of the prox part.
  double smooth_lipschitz() const { return smooth_L_; }
  double smooth_strong_convexity() const { return smooth_m_; }
  double prox_strong_convexity() const { return prox_m_; }

private:
  StructuredProblem pr_;
  Vector u_;
  bool k_in_smooth_;
  double smooth_L_;
  double smooth_m_;
  double prox_m_;
};

/// y -> k*(A^T y - c + v) + h*(y) - <b + u, y>, minimized by the dual
/// gradient estimator. The smooth part holds k*, the linear term and the
/// smooth piece of h*; the prox part is the remaining piece of h* (for Huber,
/// its ball indicator).
class DualObjective {
public:
  DualObjective(const StructuredProblem& pr, Vector u, Vector v);

  const StructuredProblem& owner() const { return pr_; }
  const Vector& u() const { return u_; }
  const Vector& v() const { return v_; }

  double value(const Vector& y) const;
  double smooth_value(const Vector& y) const;
  Vector smooth_grad(const Vector& y) const;
  bool has_prox_part() const { return prox_part_.has_value(); }
  const std::optional<FunctionSpec>& prox_part() const { return prox_part_; }
  Vector prox(double tau, const Vector& z) const;

  double smooth_lipschitz() const { return smooth_L_; }
  double smooth_strong_convexity() const { return smooth_m_; }
  double prox_strong_convexity() const { return prox_m_; }

private:
  StructuredProblem pr_;
  Vector u_;
  Vector v_;
  FunctionSpec k_conj_;
  std::optional<FunctionSpec> h_smooth_;
  std::optional<FunctionSpec> prox_part_;
  double smooth_L_;
  double smooth_m_;
  double prox_m_;
};

/// v defaults to zero.
DualObjective dual_objective(const StructuredProblem& pr, const Vector& u,
                             const std::optional<Vector>& v = std::nullopt);

/// The four experiment problems (c = 0, b = 0):
///   1: ||u - Ax||^2/2 + lambda ||x||^2/2
///   2: Huber_delta(u - Ax) + lambda ||x||^2/2
///   3: ||u - Ax||^2/2 + lambda ||x||^2/2 + gamma ||x||_1
///   4: Huber_delta(u - Ax) + lambda ||x||^2/2 + gamma ||x||_1
StructuredProblem make_experiment_problem(int which, const Matrix& A, double lambda = 2.0,
                                          double gamma = 0.1, double delta = 0.1);

struct ClosedFormF1 {
  Vector xstar;
  Vector gradp;
  /// (I + A A^T / lambda)^{-1} u, the second algebraic route to gradp.
  Vector gradp_dual_route;
};
ClosedFormF1 closed_form_f1(const Matrix& A, double lambda, const Vector& u);

/// primal_value(x, u) - (<u, y> - f*(0, y)). +inf when x is infeasible.
double duality_gap(const StructuredProblem& pr, const Vector& x, const Vector& y, const Vector& u);

}  // namespace valuegrad
