#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace valuegrad {

/// f(x, u) = exp(x) + indicator{x >= u}; x*(u) = u, p(u) = exp(u).
struct Exp1 {};
/// f(x, u) = (a x - b)^2 / 2 + indicator{|x| <= u}, for u in (0, |b/a|).
struct Quad2 {
  double a;
  double b;
};
/// f(x, u) = exp(x) + u^2 / 2; the infimum over x is not attained.
struct Exp3 {};

using ToyProblem = std::variant<Exp1, Quad2, Exp3>;

std::string toy_name(const ToyProblem& t);

/// f(x, u); +inf outside the feasible set.
double toy_value(const ToyProblem& t, double x, double u);

struct ToyTruth {
  std::optional<double> xstar;
  double p = 0.0;
  double dp = 0.0;
};

/// Closed forms. Throws InvalidInput for Quad2 with u outside (0, |b/a|) or
/// a zero coefficient.
ToyTruth toy_ground_truth(const ToyProblem& t, double u);

struct ToyRunOptions {
  int iterations = 100;
  /// Primal step; non-positive selects 0.5 / exp(u) for Exp1/Exp3 and
  /// 1 / a^2 for Quad2.
  double tau = 0.0;
  /// Primal start; unset selects u + 1 (Exp1), 0 (Quad2) and 0 (Exp3).
  std::optional<double> x0;
  int dual_iterations = 100;
};

/// Per-iteration traces of the primal iterates and the four estimators on a
/// scalar toy problem. Primal solvers: projected gradient onto [u, inf)
/// (Exp1), onto [-u, u] (Quad2), plain gradient descent (Exp3). The dual
/// estimator maximizes u y - f*(0, y) in closed form per step.
struct ToyRun {
  std::vector<double> x;
  std::vector<double> jacobian;
  std::vector<double> ang;
  std::vector<double> aug;
  std::vector<double> ig;
  std::vector<double> dg;
  ToyTruth truth;
  /// x^(k) stayed strictly inside the feasible set for every k.
  bool interior = true;
};

ToyRun run_toy(const ToyProblem& t, double u, const ToyRunOptions& opts = {});

}  // namespace valuegrad
