#include <limits>
#include "valuegrad/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace valuegrad {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }
bool nonneg_finite(double v) { return std::isfinite(v) && v >= 0.0; }

double soft(double v, double t) {
  const double a = std::abs(v) - t;
  return a > 0.0 ? std::copysign(a, v) : 0.0;
}

// Membership up to a few ulps: subgradients of norms land on the sphere only
// up to rounding.
bool in_ball(const Vector& z, double radius) {
  return z.norm() <= radius * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
}

Vector project_ball(const Vector& z, double radius) {
  const double n = z.norm();
  if (n <= radius) return z;
  Vector p = (radius / n) * z;
  // Rounding can leave the scaled point a few ulps outside; pull it in so the
  // projection is always feasible for the indicator.
  while (p.norm() > radius) p *= 1.0 - std::numeric_limits<double>::epsilon();
  return p;
}

}  // namespace

FunctionSpec FunctionSpec::sq_l2(double scale) {
  require(positive_finite(scale), "SqL2: scale must be > 0");
  return FunctionSpec(SqL2{scale});
}

FunctionSpec FunctionSpec::huber(double delta) {
  require(positive_finite(delta), "Huber: delta must be > 0");
  return FunctionSpec(Huber{delta});
}

FunctionSpec FunctionSpec::elastic_net(double lambda, double gamma) {
  require(positive_finite(lambda), "ElasticNet: lambda must be > 0");
  require(nonneg_finite(gamma), "ElasticNet: gamma must be >= 0");
  return FunctionSpec(ElasticNet{lambda, gamma});
}

FunctionSpec FunctionSpec::ball_indicator(double radius) {
  require(nonneg_finite(radius), "BallIndicator: radius must be >= 0");
  return FunctionSpec(BallIndicator{radius});
}

FunctionSpec FunctionSpec::huber_conjugate(double delta) {
  require(positive_finite(delta), "HuberConjugate: delta must be > 0");
  return FunctionSpec(HuberConjugate{delta});
}

FunctionSpec FunctionSpec::elastic_net_conjugate(double lambda, double gamma) {
  require(positive_finite(lambda), "ElasticNetConjugate: lambda must be > 0");
  require(nonneg_finite(gamma), "ElasticNetConjugate: gamma must be >= 0");
  return FunctionSpec(ElasticNetConjugate{lambda, gamma});
}

FunctionSpec FunctionSpec::scaled_norm(double weight) {
  require(nonneg_finite(weight), "ScaledNorm: weight must be >= 0");
  return FunctionSpec(ScaledNorm{weight});
}

std::string FunctionSpec::name() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const SqL2& f) { os << "SqL2(" << f.scale << ")"; },
                 [&](const Huber& f) { os << "Huber(" << f.delta << ")"; },
                 [&](const ElasticNet& f) { os << "ElasticNet(" << f.lambda << "," << f.gamma << ")"; },
                 [&](const BallIndicator& f) { os << "BallIndicator(" << f.radius << ")"; },
                 [&](const HuberConjugate& f) { os << "HuberConjugate(" << f.delta << ")"; },
                 [&](const ElasticNetConjugate& f) {
                   os << "ElasticNetConjugate(" << f.lambda << "," << f.gamma << ")";
                 },
                 [&](const ScaledNorm& f) { os << "ScaledNorm(" << f.weight << ")"; },
             },
             value_);
  return os.str();
}

double eval(const FunctionSpec& f, const Vector& z) {
  return std::visit(
      overloaded{
          [&](const SqL2& g) { return 0.5 * g.scale * z.squaredNorm(); },
          [&](const Huber& g) {
            const double n = z.norm();
            return n <= g.delta ? 0.5 * z.squaredNorm() : g.delta * (n - 0.5 * g.delta);
          },
          [&](const ElasticNet& g) {
            return 0.5 * g.lambda * z.squaredNorm() + g.gamma * z.lpNorm<1>();
          },
          [&](const BallIndicator& g) { return in_ball(z, g.radius) ? 0.0 : kInfinity; },
          [&](const HuberConjugate& g) {
            return in_ball(z, g.delta) ? 0.5 * z.squaredNorm() : kInfinity;
          },
          [&](const ElasticNetConjugate& g) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < z.size(); ++i) {
              const double e = std::max(0.0, std::abs(z(i)) - g.gamma);
              acc += e * e;
            }
            return acc / (2.0 * g.lambda);
          },
          [&](const ScaledNorm& g) { return g.weight * z.norm(); },
      },
      f.variant());
}

Vector grad(const FunctionSpec& f, const Vector& z) {
  return std::visit(
      overloaded{
          [&](const SqL2& g) -> Vector { return g.scale * z; },
          [&](const Huber& g) -> Vector {
            const double n = z.norm();
            if (n <= g.delta) return z;
            return (g.delta / n) * z;
          },
          [&](const ElasticNet& g) -> Vector {
            if (g.gamma == 0.0) return g.lambda * z;
            Vector out(z.size());
            for (Eigen::Index i = 0; i < z.size(); ++i) {
              if (z(i) == 0.0) {
                throw NonsmoothPoint("grad: ElasticNet is not differentiable at a zero coordinate");
              }
              out(i) = g.lambda * z(i) + std::copysign(g.gamma, z(i));
            }
            return out;
          },
          [&](const BallIndicator&) -> Vector {
            throw NonsmoothPoint("grad: BallIndicator has no gradient");
          },
          [&](const HuberConjugate&) -> Vector {
            throw NonsmoothPoint("grad: HuberConjugate contains a ball indicator");
          },
          [&](const ElasticNetConjugate& g) -> Vector {
            Vector out(z.size());
            for (Eigen::Index i = 0; i < z.size(); ++i) {
              const double e = std::max(0.0, std::abs(z(i)) - g.gamma);
              out(i) = std::copysign(e, z(i)) / g.lambda;
            }
            return out;
          },
          [&](const ScaledNorm& g) -> Vector {
            const double n = z.norm();
            if (n == 0.0 && g.weight > 0.0) {
              throw NonsmoothPoint("grad: norm is not differentiable at the origin");
            }
            if (g.weight == 0.0) return Vector::Zero(z.size());
            return (g.weight / n) * z;
          },
      },
      f.variant());
}

Matrix hessian(const FunctionSpec& f, const Vector& z) {
  const auto n = z.size();
  return std::visit(
      overloaded{
          [&](const SqL2& g) -> Matrix { return g.scale * Matrix::Identity(n, n); },
          [&](const Huber& g) -> Matrix {
            const double r = z.norm();
            if (r <= g.delta) return Matrix::Identity(n, n);
            const Vector e = z / r;
            return (g.delta / r) * (Matrix::Identity(n, n) - e * e.transpose());
          },
          [&](const ElasticNet& g) -> Matrix { return g.lambda * Matrix::Identity(n, n); },
          [&](const BallIndicator&) -> Matrix {
            throw NonsmoothPoint("hessian: BallIndicator has no Hessian");
          },
          [&](const HuberConjugate&) -> Matrix {
            throw NonsmoothPoint("hessian: HuberConjugate contains a ball indicator");
          },
          [&](const ElasticNetConjugate& g) -> Matrix {
            Vector d(n);
            for (Eigen::Index i = 0; i < n; ++i) {
              d(i) = std::abs(z(i)) > g.gamma ? 1.0 / g.lambda : 0.0;
            }
            return d.asDiagonal();
          },
          [&](const ScaledNorm&) -> Matrix {
            throw NonsmoothPoint("hessian: ScaledNorm is not twice differentiable everywhere");
          },
      },
      f.variant());
}

Vector prox(const FunctionSpec& f, double tau, const Vector& z) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidInput("prox: tau must be > 0");
  }
  return std::visit(
      overloaded{
          [&](const SqL2& g) -> Vector { return z / (1.0 + tau * g.scale); },
          [&](const Huber& g) -> Vector {
            // Moreau decomposition through the conjugate ||.||^2/2 + ball(delta).
            return z - tau * project_ball(z / (1.0 + tau), g.delta);
          },
          [&](const ElasticNet& g) -> Vector {
            Vector out(z.size());
            const double t = tau * g.gamma;
            const double shrink = 1.0 + tau * g.lambda;
            for (Eigen::Index i = 0; i < z.size(); ++i) out(i) = soft(z(i), t) / shrink;
            return out;
          },
          [&](const BallIndicator& g) -> Vector { return project_ball(z, g.radius); },
          [&](const HuberConjugate& g) -> Vector {
            return project_ball(z / (1.0 + tau), g.delta);
          },
          [&](const ElasticNetConjugate& g) -> Vector {
            Vector out(z.size());
            const double keep = g.lambda / (g.lambda + tau);
            for (Eigen::Index i = 0; i < z.size(); ++i) {
              const double a = std::abs(z(i));
              out(i) = a <= g.gamma ? z(i) : std::copysign(g.gamma + (a - g.gamma) * keep, z(i));
            }
            return out;
          },
          [&](const ScaledNorm& g) -> Vector {
            const double n = z.norm();
            const double t = tau * g.weight;
            if (n <= t) return Vector::Zero(z.size());
            return (1.0 - t / n) * z;
          },
      },
      f.variant());
}

Vector prox_jacobian_diagonal(const FunctionSpec& f, double tau, const Vector& z) {
  if (const auto* g = std::get_if<ElasticNet>(&f.variant())) {
    Vector d(z.size());
    const double t = tau * g->gamma;
    const double slope = 1.0 / (1.0 + tau * g->lambda);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      d(i) = std::abs(z(i)) <= t && g->gamma > 0.0 ? 0.0 : slope;
    }
    return d;
  }
  if (const auto* g = std::get_if<SqL2>(&f.variant())) {
    return Vector::Constant(z.size(), 1.0 / (1.0 + tau * g->scale));
  }
  throw UnsupportedVariant("prox_jacobian_diagonal: " + f.name() + " has no diagonal prox derivative");
}

FunctionSpec conjugate(const FunctionSpec& f) {
  return std::visit(
      overloaded{
          [](const SqL2& g) { return FunctionSpec::sq_l2(1.0 / g.scale); },
          [](const Huber& g) { return FunctionSpec::huber_conjugate(g.delta); },
          [](const ElasticNet& g) { return FunctionSpec::elastic_net_conjugate(g.lambda, g.gamma); },
          [](const BallIndicator& g) { return FunctionSpec::scaled_norm(g.radius); },
          [](const HuberConjugate& g) { return FunctionSpec::huber(g.delta); },
          [](const ElasticNetConjugate& g) { return FunctionSpec::elastic_net(g.lambda, g.gamma); },
          [](const ScaledNorm& g) { return FunctionSpec::ball_indicator(g.weight); },
      },
      f.variant());
}

SmoothnessProfile smoothness_profile(const FunctionSpec& f) {
  return std::visit(
      overloaded{
          [](const SqL2& g) { return SmoothnessProfile{g.scale, g.scale, true}; },
          [](const Huber&) { return SmoothnessProfile{0.0, 1.0, true}; },
          [](const ElasticNet& g) {
            return g.gamma > 0.0 ? SmoothnessProfile{g.lambda, kInfinity, false}
                                 : SmoothnessProfile{g.lambda, g.lambda, true};
          },
          [](const BallIndicator&) { return SmoothnessProfile{0.0, kInfinity, false}; },
          [](const HuberConjugate&) { return SmoothnessProfile{1.0, kInfinity, false}; },
          [](const ElasticNetConjugate& g) {
            return g.gamma > 0.0 ? SmoothnessProfile{0.0, 1.0 / g.lambda, true}
                                 : SmoothnessProfile{1.0 / g.lambda, 1.0 / g.lambda, true};
          },
          [](const ScaledNorm&) { return SmoothnessProfile{0.0, kInfinity, false}; },
      },
      f.variant());
}

bool is_smooth(const FunctionSpec& f) { return smoothness_profile(f).smooth; }

SmoothProxSplit split_smooth_prox(const FunctionSpec& f) {
  if (const auto* g = std::get_if<HuberConjugate>(&f.variant())) {
    return {FunctionSpec::sq_l2(1.0), FunctionSpec::ball_indicator(g->delta)};
  }
  if (is_smooth(f)) return {f, std::nullopt};
  return {std::nullopt, f};
}

}  // namespace valuegrad
