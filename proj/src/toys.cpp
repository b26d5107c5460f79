#include "valuegrad/toys.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "valuegrad/errors.hpp"

namespace valuegrad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void check_quad2(const Quad2& q) {
  if (q.a == 0.0 || q.b == 0.0) throw InvalidInput("Quad2: a and b must be nonzero");
}

// Maximizer of y |x| - (a x - b)^2 / 2 over x for y <= 0.
double quad2_inner_argmax(const Quad2& q, double y) {
  const double target = q.b / q.a;
  const double shrink = std::abs(y) / (q.a * q.a);
  const double mag = std::max(0.0, std::abs(target) - shrink);
  return std::copysign(mag, target);
}

}  // namespace

std::string toy_name(const ToyProblem& t) {
  if (std::holds_alternative<Exp1>(t)) return "Exp1";
  if (std::holds_alternative<Exp3>(t)) return "Exp3";
  const auto& q = std::get<Quad2>(t);
  char buf[64];
  std::snprintf(buf, sizeof buf, "Quad2(%g,%g)", q.a, q.b);
  return buf;
}

double toy_value(const ToyProblem& t, double x, double u) {
  if (std::holds_alternative<Exp1>(t)) return x >= u ? std::exp(x) : kInf;
  if (std::holds_alternative<Exp3>(t)) return std::exp(x) + 0.5 * u * u;
  const auto& q = std::get<Quad2>(t);
  if (std::abs(x) > u) return kInf;
  const double r = q.a * x - q.b;
  return 0.5 * r * r;
}

ToyTruth toy_ground_truth(const ToyProblem& t, double u) {
  if (std::holds_alternative<Exp1>(t)) {
    const double e = std::exp(u);
    return {u, e, e};
  }
  if (std::holds_alternative<Exp3>(t)) {
    return {std::nullopt, 0.5 * u * u, u};
  }
  const auto& q = std::get<Quad2>(t);
  check_quad2(q);
  if (!(u > 0.0 && u < std::abs(q.b / q.a))) {
    throw InvalidInput("Quad2: u must lie in (0, |b/a|)");
  }
  const double s = sgn(q.b / q.a);
  const double x = s * u;
  const double r = q.a * x - q.b;
  return {x, 0.5 * r * r, q.a * s * r};
}

ToyRun run_toy(const ToyProblem& t, double u, const ToyRunOptions& opts) {
  ToyRun run;
  run.truth = toy_ground_truth(t, u);
  const int K = opts.iterations;
  if (K < 0 || opts.dual_iterations < 0) throw InvalidInput("run_toy: iteration counts must be >= 0");

  const bool exp1 = std::holds_alternative<Exp1>(t);
  const bool exp3 = std::holds_alternative<Exp3>(t);
  const Quad2 q = exp1 || exp3 ? Quad2{1.0, 1.0} : std::get<Quad2>(t);

  double tau = opts.tau;
  if (!(tau > 0.0)) tau = (exp1 || exp3) ? 0.5 / std::exp(u) : 1.0 / (q.a * q.a);
  double x = opts.x0 ? *opts.x0 : (exp1 ? u + 1.0 : 0.0);
  double J = 0.0;

  const auto record = [&]() {
    run.x.push_back(x);
    run.jacobian.push_back(J);
    if (exp1) {
      // df/du is zero off the boundary; the zero selection is kept on it.
      run.ang.push_back(0.0);
      run.ig.push_back(0.0);
      run.aug.push_back(J * std::exp(x));
      if (!(x > u)) run.interior = false;
    } else if (exp3) {
      run.ang.push_back(u);
      run.ig.push_back(u);
      run.aug.push_back(J * std::exp(x) + u);
    } else {
      run.ang.push_back(0.0);
      run.ig.push_back(0.0);
      run.aug.push_back(J * q.a * (q.a * x - q.b));
      if (!(std::abs(x) < u)) run.interior = false;
    }
  };

  record();
  for (int k = 0; k < K; ++k) {
    if (exp1) {
      const double w = x - tau * std::exp(x);
      if (w <= u) {
        x = u;
        J = 1.0;
      } else {
        J = (1.0 - tau * std::exp(x)) * J;
        x = w;
      }
    } else if (exp3) {
      x = x - tau * std::exp(x);
    } else {
      const double w = x - tau * q.a * (q.a * x - q.b);
      if (w >= u) {
        x = u;
        J = 1.0;
      } else if (w <= -u) {
        x = -u;
        J = -1.0;
      } else {
        J = (1.0 - tau * q.a * q.a) * J;
        x = w;
      }
    }
    record();
  }

  // Dual: maximize u y - f*(0, y).
  double y;
  if (exp1) {
    // f*(0, y) = y log y - y on y > 0. Damped Newton steps.
    y = 1.0;
    run.dg.push_back(y);
    for (int k = 0; k < opts.dual_iterations; ++k) {
      const double factor = std::clamp(1.0 + u - std::log(y), 0.5, 2.0);
      y *= factor;
      run.dg.push_back(y);
    }
  } else if (exp3) {
    // f*(0, y) = y^2 / 2.
    y = 0.0;
    run.dg.push_back(y);
    for (int k = 0; k < opts.dual_iterations; ++k) {
      y += 0.5 * (u - y);
      run.dg.push_back(y);
    }
  } else {
    // f*(0, y) = sup_x y |x| - (a x - b)^2 / 2 on y <= 0, with derivative
    // |x(y)|; projected ascent with step a^2.
    y = 0.0;
    run.dg.push_back(y);
    for (int k = 0; k < opts.dual_iterations; ++k) {
      const double slope = u - std::abs(quad2_inner_argmax(q, y));
      y = std::min(0.0, y + q.a * q.a * slope);
      run.dg.push_back(y);
    }
  }
  return run;
}

}  // namespace valuegrad
