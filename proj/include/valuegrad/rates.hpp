#pragma once

#include <string>
#include <vector>

#include "valuegrad/core.hpp"
#include "valuegrad/functions.hpp"
#include "valuegrad/problems.hpp"

namespace valuegrad {

/// m_h, L_h, m_k, L_k of the two building blocks; L_A = lmax(A^T A),
/// m_p = lmin(A^T A), m_d = lmin(A A^T). L values may be +inf.
struct RegularityConstants {
  double m_h = 0.0;
  double L_h = 0.0;
  double m_k = 0.0;
  double L_k = 0.0;
  double L_A = 0.0;
  double m_p = 0.0;
  double m_d = 0.0;
};

RegularityConstants regularity_constants(const StructuredProblem& pr);

enum class RateRegime {
  Linear,               // omega in [0, 1) is valid
  AcceleratedSublinear, // O(1/K^2)
  Sublinear,            // O(1/K)
  Unavailable,          // inputs outside the formula's hypotheses
};

std::string to_string(RateRegime r);

/// A contraction factor, or the regime that replaces it. `omega` is NaN-free:
/// it holds 1 whenever the regime is not Linear.
struct RateValue {
  RateRegime regime = RateRegime::Unavailable;
  double omega = 1.0;
  std::string reason;

  bool linear() const { return regime == RateRegime::Linear; }
};

/// [(L_h L_A - m_h m_p) + (L_k - m_k)] / [(L_h L_A + m_h m_p) + (L_k + m_k)]
RateValue primal_rate(const RegularityConstants& rc);

/// [L_h m_h (L_k L_A - m_k m_d) + L_k m_k (L_h - m_h)] /
/// [L_h m_h (L_k L_A + m_k m_d) + L_k m_k (L_h + m_h)]
RateValue dual_rate(const RegularityConstants& rc);

/// (sqrt(L) - sqrt(m)) / (sqrt(L) + sqrt(m)) for CG and Heavy-ball.
RateValue cg_rate(double L, double m);

/// Proximal-gradient factors for a smooth part with strong convexity
/// sc_smooth plus a prox part with strong convexity sc_prox:
///   ista  = (1 - tau sc_smooth) / (1 + tau sc_prox)
///   fista = 1 - sqrt(tau mu / (1 + tau sc_prox)),  mu = sc_smooth + sc_prox
struct ProximalRates {
  RateValue ista;
  RateValue fista;
};
ProximalRates proximal_rates(double sc_smooth, double sc_prox, double tau);

/// PDHG with mu = 2 sqrt(sc_g sc_m) / L: omega = (1 + theta) / (2 + mu);
/// the error after K steps decays like omega^(K/2). One zero modulus gives
/// AcceleratedSublinear, two give Sublinear.
RateValue pdhg_rate(double sc_prox_g, double sc_prox_m, double L, double theta);

/// Precomposition with a linear map B: m scales with lmin(B^T B), L with
/// lmax(B^T B).
SmoothnessProfile precompose(const SmoothnessProfile& g, const SpectralBounds& B);
/// Sums add both constants.
SmoothnessProfile add_profiles(const SmoothnessProfile& a, const SmoothnessProfile& b);
/// Conjugation swaps the roles: m* = 1/L, L* = 1/m.
SmoothnessProfile conjugate_profile(const SmoothnessProfile& g);

enum class TransferMode { Precompose, Conjugate };
SmoothnessProfile lemma5_transfer(const SmoothnessProfile& g, const SpectralBounds& B, TransferMode mode);

/// Constants entering the analytic / automatic / implicit error bounds for
/// gradient descent with step tau and omega = 1 - m tau.
struct Theorem1Constants {
  double L_x = 0.0;
  double L_xu = 0.0;   // Lipschitz constant of the mixed second derivative
  double L_xx = 0.0;   // Lipschitz constant of the x-Hessian
  double L1 = 0.0;     // bound on ||D_u x^(k)||
  double L2 = 0.0;     // bound on ||phi(x^(K), u)||
  double tau = 0.0;
  double omega = 0.0;
};

struct Envelopes {
  std::vector<double> analytic;   // L_x e omega^k
  std::vector<double> automatic;  // C_k e omega^(2k - 1)
  std::vector<double> implicit;   // C e omega^(2k)
};

/// Bound curves for k = 0..K given e = ||x^(0) - x*||.
Envelopes theorem1_envelopes(const Theorem1Constants& c, double x0_err, int K);

/// All factors for one problem instance, as printed by the `rates` command.
struct RateReport {
  RegularityConstants constants;
  RateValue omega_p;
  RateValue omega_d;
  RateValue omega_cg;      // dual, when the dual is a quadratic
  RateValue omega_ista;    // dual smooth part + prox part, tau = 1/L
  RateValue omega_fista;
  RateValue omega_pdhg;
  double dual_L = 0.0;
  double dual_m = 0.0;
};

RateReport rate_report(const StructuredProblem& pr);

}  // namespace valuegrad
