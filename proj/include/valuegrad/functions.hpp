#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>

#include "valuegrad/core.hpp"

namespace valuegrad {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Closed convex building blocks. The first four are the primal-side pieces;
// the last three only arise as conjugates of those.

/// s * ||z||^2 / 2
struct SqL2 {
  double scale;
};
/// Radial Huber: ||z||^2/2 inside the delta-ball, delta * (||z|| - delta/2) outside.
struct Huber {
  double delta;
};
/// lambda * ||z||^2 / 2 + gamma * ||z||_1
struct ElasticNet {
  double lambda;
  double gamma;
};
/// 0 on the closed radius-ball, +inf outside.
struct BallIndicator {
  double radius;
};
/// ||z||^2 / 2 restricted to the closed delta-ball (conjugate of Huber).
struct HuberConjugate {
  double delta;
};
/// sum_i max(0, |z_i| - gamma)^2 / (2 lambda) (conjugate of ElasticNet).
struct ElasticNetConjugate {
  double lambda;
  double gamma;
};
/// weight * ||z||_2 (conjugate of BallIndicator).
struct ScaledNorm {
  double weight;
};

/// A validated closed convex function. Construct through the factories; they
/// reject parameters outside the admissible ranges.
class FunctionSpec {
public:
  using Variant = std::variant<SqL2, Huber, ElasticNet, BallIndicator, HuberConjugate,
                               ElasticNetConjugate, ScaledNorm>;

  static FunctionSpec sq_l2(double scale);
  static FunctionSpec huber(double delta);
  static FunctionSpec elastic_net(double lambda, double gamma);
  static FunctionSpec ball_indicator(double radius);
  static FunctionSpec huber_conjugate(double delta);
  static FunctionSpec elastic_net_conjugate(double lambda, double gamma);
  static FunctionSpec scaled_norm(double weight);

  const Variant& variant() const { return value_; }
  std::string name() const;

  template <typename T>
  bool holds() const {
    return std::holds_alternative<T>(value_);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(value_);
  }

private:
  explicit FunctionSpec(Variant v) : value_(v) {}
  Variant value_;
};

/// Strong convexity m and gradient Lipschitz constant L (possibly +inf).
struct SmoothnessProfile {
  double m = 0.0;
  double L = kInfinity;
  bool smooth = false;
};

/// Extended-real value; +inf outside the domain.
double eval(const FunctionSpec& f, const Vector& z);

/// Gradient at z. Throws NonsmoothPoint where f is not differentiable
/// (ball indicators, elastic net kinks, the norm at the origin).
Vector grad(const FunctionSpec& f, const Vector& z);

/// Hessian at z where it exists. ElasticNet reports lambda * I, the Hessian of
/// its differentiable part, valid off the coordinate axes.
Matrix hessian(const FunctionSpec& f, const Vector& z);

/// argmin_w f(w) + ||w - z||^2 / (2 tau).
Vector prox(const FunctionSpec& f, double tau, const Vector& z);

/// Diagonal of the derivative of prox(f, tau, .) at z, for the separable or
/// scalar-multiple variants. At the soft-threshold kink |z_i| == tau * gamma the
/// flat side (0) is selected.
Vector prox_jacobian_diagonal(const FunctionSpec& f, double tau, const Vector& z);

FunctionSpec conjugate(const FunctionSpec& f);

SmoothnessProfile smoothness_profile(const FunctionSpec& f);

bool is_smooth(const FunctionSpec& f);

/// Splits f into a differentiable piece and a prox-friendly remainder. At least
/// one of the two is present. Only HuberConjugate yields both.
struct SmoothProxSplit {
  std::optional<FunctionSpec> smooth;
  std::optional<FunctionSpec> prox;
};
SmoothProxSplit split_smooth_prox(const FunctionSpec& f);

}  // namespace valuegrad
