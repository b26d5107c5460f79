#include "valuegrad/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace valuegrad {

EigenRange symmetric_eigen_range(const Matrix& S) {
  if (S.rows() == 0 || S.rows() != S.cols()) {
    throw InvalidInput("symmetric_eigen_range: expected a nonempty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(S, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("symmetric_eigen_range: eigendecomposition failed");
  }
  const auto& ev = solver.eigenvalues();  // ascending
  return {ev(0), ev(ev.size() - 1)};
}

double operator_norm(const Matrix& M) {
  if (M.size() == 0) {
    return 0.0;
  }
  const Matrix gram = M.rows() <= M.cols() ? Matrix(M * M.transpose()) : Matrix(M.transpose() * M);
  return std::sqrt(std::max(0.0, symmetric_eigen_range(gram).max));
}

SpectralBounds spectral_bounds(const Matrix& A) {
  if (A.rows() == 0 || A.cols() == 0) {
    throw InvalidInput("spectral_bounds: matrix has a zero dimension");
  }
  const EigenRange ata = symmetric_eigen_range(A.transpose() * A);
  const EigenRange aat = symmetric_eigen_range(A * A.transpose());
  SpectralBounds out;
  out.lmax_AtA = std::max(0.0, ata.max);
  out.lmin_AtA = std::max(0.0, ata.min);
  out.lmin_AAt = std::max(0.0, aat.min);
  // Round-off leaves O(eps * lmax) noise where the exact value is zero.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * out.lmax_AtA *
                       static_cast<double>(std::max(A.rows(), A.cols()));
  if (out.lmin_AtA <= floor) out.lmin_AtA = 0.0;
  if (out.lmin_AAt <= floor) out.lmin_AAt = 0.0;
  return out;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double GaussianSource::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // 1 - uniform() lies in (0, 1], so the logarithm is finite.
  const double u1 = 1.0 - rng_.uniform();
  const double u2 = rng_.uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

ProblemData seeded_problem_data(int N, int P, std::uint64_t seed, double cond_ratio) {
  if (N < 1 || P < 1) {
    throw InvalidInput("seeded_problem_data: N and P must be positive");
  }
  if (!(cond_ratio >= 1.0) || !std::isfinite(cond_ratio)) {
    throw InvalidInput("seeded_problem_data: cond_ratio must be finite and >= 1");
  }
  GaussianSource gauss(seed);
  ProblemData data{Matrix(P, N), Vector(P)};
  for (int i = 0; i < P; ++i) {
    for (int j = 0; j < N; ++j) {
      data.A(i, j) = gauss.next();
    }
  }
  for (int i = 0; i < P; ++i) {
    data.u(i) = gauss.next();
  }
  if (N > 1 && cond_ratio != 1.0) {
    for (int j = 0; j < N; ++j) {
      const double scale = std::pow(cond_ratio, static_cast<double>(j) / static_cast<double>(N - 1));
      data.A.col(j) *= scale;
    }
  }
  return data;
}

bool all_finite(const Vector& v) {
  return v.allFinite();
}

}  // namespace valuegrad
