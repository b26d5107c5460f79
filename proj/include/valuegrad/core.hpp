#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "valuegrad/errors.hpp"

namespace valuegrad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Extremal eigenvalues of the Gram matrices of a linear map A.
///
/// lmax_AtA is L_A, lmin_AtA is m_p and lmin_AAt is m_d in the rate formulas.
struct SpectralBounds {
  double lmax_AtA = 0.0;
  double lmin_AtA = 0.0;
  double lmin_AAt = 0.0;
};

SpectralBounds spectral_bounds(const Matrix& A);

/// Smallest and largest eigenvalue of a symmetric matrix (dense solver).
struct EigenRange {
  double min = 0.0;
  double max = 0.0;
};
EigenRange symmetric_eigen_range(const Matrix& S);

/// Largest singular value of an arbitrary dense matrix.
double operator_norm(const Matrix& M);

/// SplitMix64: 64-bit state, one add and a three-step mix per draw. Streams
/// are split by drawing a fresh seed from the parent.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  SplitMix64 split() { return SplitMix64(next()); }

private:
  std::uint64_t state_;
};

/// Standard normal draws via the Box-Muller transform. Both outputs of each
/// transform are used, cosine branch first.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}
  double next();

private:
  SplitMix64 rng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

struct ProblemData {
  Matrix A;  // P x N
  Vector u;  // P
};

/// Seeded standard-normal A (P x N, drawn row-major) followed by u (P).
/// Column j of A is then scaled by cond_ratio^(j / (N - 1)).
ProblemData seeded_problem_data(int N, int P, std::uint64_t seed, double cond_ratio = 10.0);

bool all_finite(const Vector& v);

}  // namespace valuegrad
