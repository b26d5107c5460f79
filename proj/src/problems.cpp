#include "valuegrad/problems.hpp"

#include <cmath>

namespace valuegrad {

namespace {

double mul_inf(double a, double b) {
  // 0 * inf := 0 for regularity-constant products.
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

void check_dims(const StructuredProblem& pr, const Vector* x, const Vector* y, const char* where) {
  if (x && x->size() != pr.N()) throw InvalidInput(std::string(where) + ": x has wrong dimension");
  if (y && y->size() != pr.P()) throw InvalidInput(std::string(where) + ": vector in R^P has wrong dimension");
}

}  // namespace

StructuredProblem::StructuredProblem(Vector c, Vector b, Matrix A, FunctionSpec h, FunctionSpec k)
    : c_(std::move(c)), b_(std::move(b)), A_(std::move(A)), h_(std::move(h)), k_(std::move(k)) {
  if (A_.rows() == 0 || A_.cols() == 0) throw InvalidInput("StructuredProblem: empty A");
  if (c_.size() != A_.cols()) throw InvalidInput("StructuredProblem: c must have N entries");
  if (b_.size() != A_.rows()) throw InvalidInput("StructuredProblem: b must have P entries");
  if (!A_.allFinite() || !c_.allFinite() || !b_.allFinite()) {
    throw InvalidInput("StructuredProblem: non-finite data");
  }
}

Vector StructuredProblem::residual(const Vector& x, const Vector& u) const {
  return b_ - A_ * x + u;
}

double primal_value(const StructuredProblem& pr, const Vector& x, const Vector& u) {
  check_dims(pr, &x, &u, "primal_value");
  return pr.c().dot(x) + eval(pr.h(), pr.residual(x, u)) + eval(pr.k(), x);
}

double conjugate_value(const StructuredProblem& pr, const Vector& v, const Vector& y) {
  check_dims(pr, &v, &y, "conjugate_value");
  const Vector w = pr.A().transpose() * y - pr.c() + v;
  return -pr.b().dot(y) + eval(conjugate(pr.k()), w) + eval(conjugate(pr.h()), y);
}

// ---------------------------------------------------------------------------

PrimalObjective::PrimalObjective(const StructuredProblem& pr, Vector u) : pr_(pr), u_(std::move(u)) {
  check_dims(pr_, nullptr, &u_, "PrimalObjective");
  if (!is_smooth(pr_.h())) {
    throw InvalidInput("PrimalObjective: h must be smooth for primal first-order methods");
  }
  const SpectralBounds sb = spectral_bounds(pr_.A());
  const SmoothnessProfile ph = smoothness_profile(pr_.h());
  const SmoothnessProfile pk = smoothness_profile(pr_.k());
  k_in_smooth_ = pk.smooth;
  smooth_L_ = mul_inf(ph.L, sb.lmax_AtA);
  smooth_m_ = ph.m * sb.lmin_AtA;
  if (k_in_smooth_) {
    smooth_L_ += pk.L;
    smooth_m_ += pk.m;
    prox_m_ = 0.0;
  } else {
    prox_m_ = pk.m;
  }
}

double PrimalObjective::value(const Vector& x) const { return primal_value(pr_, x, u_); }

Vector PrimalObjective::smooth_grad(const Vector& x) const {
  Vector g = pr_.c() - pr_.A().transpose() * grad(pr_.h(), pr_.residual(x, u_));
  if (k_in_smooth_) g += grad(pr_.k(), x);
  return g;
}

Vector PrimalObjective::prox(double tau, const Vector& z) const {
  if (k_in_smooth_) return z;
  return valuegrad::prox(pr_.k(), tau, z);
}

Vector PrimalObjective::prox_jacobian_diagonal(double tau, const Vector& z) const {
  if (k_in_smooth_) return Vector::Ones(z.size());
  return valuegrad::prox_jacobian_diagonal(pr_.k(), tau, z);
}

Vector PrimalObjective::grad_u(const Vector& x) const { return grad(pr_.h(), pr_.residual(x, u_)); }

Vector PrimalObjective::grad_x(const Vector& x) const {
  Vector g = smooth_grad(x);
  if (!k_in_smooth_) {
    const auto& en = pr_.k().as<ElasticNet>();
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double s = x(i) > 0.0 ? 1.0 : (x(i) < 0.0 ? -1.0 : 0.0);
      g(i) += en.lambda * x(i) + en.gamma * s;
    }
  }
  return g;
}

Matrix PrimalObjective::hessian_xx(const Vector& x, bool include_k) const {
  const Matrix& A = pr_.A();
  Matrix H = A.transpose() * hessian(pr_.h(), pr_.residual(x, u_)) * A;
  if (k_in_smooth_ || include_k) H += hessian(pr_.k(), x);
  return H;
}

Matrix PrimalObjective::hessian_xu(const Vector& x) const {
  return -pr_.A().transpose() * hessian(pr_.h(), pr_.residual(x, u_));
}

// ---------------------------------------------------------------------------

DualObjective::DualObjective(const StructuredProblem& pr, Vector u, Vector v)
    : pr_(pr), u_(std::move(u)), v_(std::move(v)), k_conj_(conjugate(pr.k())) {
  check_dims(pr_, &v_, &u_, "DualObjective");
  const SmoothnessProfile pkc = smoothness_profile(k_conj_);
  if (!pkc.smooth) {
    throw InvalidInput("DualObjective: k* must be smooth (k strongly convex)");
  }
  const SmoothProxSplit hs = split_smooth_prox(conjugate(pr_.h()));
  h_smooth_ = hs.smooth;
  prox_part_ = hs.prox;
  const SpectralBounds sb = spectral_bounds(pr_.A());
  smooth_L_ = mul_inf(pkc.L, sb.lmax_AtA);
  smooth_m_ = pkc.m * sb.lmin_AAt;
  if (h_smooth_) {
    const SmoothnessProfile p = smoothness_profile(*h_smooth_);
    smooth_L_ += p.L;
    smooth_m_ += p.m;
  }
  prox_m_ = prox_part_ ? smoothness_profile(*prox_part_).m : 0.0;
}

double DualObjective::smooth_value(const Vector& y) const {
  const Vector w = pr_.A().transpose() * y - pr_.c() + v_;
  double val = eval(k_conj_, w) - (pr_.b() + u_).dot(y);
  if (h_smooth_) val += eval(*h_smooth_, y);
  return val;
}

double DualObjective::value(const Vector& y) const {
  double val = smooth_value(y);
  if (prox_part_) val += eval(*prox_part_, y);
  return val;
}

Vector DualObjective::smooth_grad(const Vector& y) const {
  const Vector w = pr_.A().transpose() * y - pr_.c() + v_;
  Vector g = pr_.A() * grad(k_conj_, w) - (pr_.b() + u_);
  if (h_smooth_) g += grad(*h_smooth_, y);
  return g;
}

Vector DualObjective::prox(double tau, const Vector& z) const {
  if (!prox_part_) return z;
  return valuegrad::prox(*prox_part_, tau, z);
}

DualObjective dual_objective(const StructuredProblem& pr, const Vector& u, const std::optional<Vector>& v) {
  return DualObjective(pr, u, v ? *v : Vector(Vector::Zero(pr.N())));
}

// ---------------------------------------------------------------------------

StructuredProblem make_experiment_problem(int which, const Matrix& A, double lambda, double gamma,
                                          double delta) {
  if (which < 1 || which > 4) throw InvalidInput("make_experiment_problem: index must be 1..4");
  const bool huber = which == 2 || which == 4;
  const bool sparse = which == 3 || which == 4;
  FunctionSpec h = huber ? FunctionSpec::huber(delta) : FunctionSpec::sq_l2(1.0);
  FunctionSpec k = sparse ? FunctionSpec::elastic_net(lambda, gamma) : FunctionSpec::sq_l2(lambda);
  return StructuredProblem(Vector::Zero(A.cols()), Vector::Zero(A.rows()), A, h, k);
}

ClosedFormF1 closed_form_f1(const Matrix& A, double lambda, const Vector& u) {
  if (!(lambda > 0.0)) throw InvalidInput("closed_form_f1: lambda must be > 0");
  if (u.size() != A.rows()) throw InvalidInput("closed_form_f1: u has wrong dimension");
  const auto N = A.cols();
  const auto P = A.rows();
  const Matrix primal = A.transpose() * A + lambda * Matrix::Identity(N, N);
  ClosedFormF1 out;
  out.xstar = primal.llt().solve(A.transpose() * u);
  out.gradp = u - A * out.xstar;
  const Matrix dual = Matrix::Identity(P, P) + (A * A.transpose()) / lambda;
  out.gradp_dual_route = dual.llt().solve(u);
  return out;
}

double duality_gap(const StructuredProblem& pr, const Vector& x, const Vector& y, const Vector& u) {
  const double primal = primal_value(pr, x, u);
  if (primal == kInfinity) return kInfinity;
  const double dual = u.dot(y) - conjugate_value(pr, Vector::Zero(pr.N()), y);
  return primal - dual;
}

}  // namespace valuegrad
