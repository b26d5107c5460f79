#include "valuegrad/rates.hpp"

#include <cmath>

namespace valuegrad {

namespace {

double mul_inf(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

double inverse(double v) {
  if (v == 0.0) return kInfinity;
  if (std::isinf(v)) return 0.0;
  return 1.0 / v;
}

RateValue unavailable(std::string why) { return {RateRegime::Unavailable, 1.0, std::move(why)}; }

RateValue linear(double omega) {
  // Round-off can push a perfectly conditioned numerator slightly negative.
  if (omega < 0.0 && omega > -1e-14) omega = 0.0;
  if (!(omega >= 0.0 && omega < 1.0)) return unavailable("factor outside [0, 1)");
  return {RateRegime::Linear, omega, {}};
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string to_string(RateRegime r) {
  switch (r) {
    case RateRegime::Linear: return "linear";
    case RateRegime::AcceleratedSublinear: return "O(1/K^2)";
    case RateRegime::Sublinear: return "O(1/K)";
    case RateRegime::Unavailable: return "unavailable";
  }
  return "unknown";
}

RegularityConstants regularity_constants(const StructuredProblem& pr) {
  const SmoothnessProfile ph = smoothness_profile(pr.h());
  const SmoothnessProfile pk = smoothness_profile(pr.k());
  const SpectralBounds sb = spectral_bounds(pr.A());
  return {ph.m, ph.L, pk.m, pk.L, sb.lmax_AtA, sb.lmin_AtA, sb.lmin_AAt};
}

RateValue primal_rate(const RegularityConstants& rc) {
  if (!std::isfinite(rc.L_h) || !std::isfinite(rc.L_k)) {
    return unavailable("gradient Lipschitz constant is infinite; use the proximal or PDHG regimes");
  }
  if (!finite_nonneg(rc.m_h) || !finite_nonneg(rc.m_k) || !finite_nonneg(rc.L_A) || !finite_nonneg(rc.m_p)) {
    return unavailable("invalid constants");
  }
  const double num = (rc.L_h * rc.L_A - rc.m_h * rc.m_p) + (rc.L_k - rc.m_k);
  const double den = (rc.L_h * rc.L_A + rc.m_h * rc.m_p) + (rc.L_k + rc.m_k);
  if (!(den > 0.0)) return unavailable("denominator is not positive");
  return linear(num / den);
}

RateValue dual_rate(const RegularityConstants& rc) {
  const bool ok = std::isfinite(rc.L_h) && std::isfinite(rc.L_k) && rc.L_h > 0.0 && rc.L_k > 0.0 &&
                  rc.m_h > 0.0 && rc.m_k > 0.0 && finite_nonneg(rc.L_A) && finite_nonneg(rc.m_d);
  if (!ok) return unavailable("dual rate needs finite positive m_h, L_h, m_k, L_k");
  const double a = rc.L_h * rc.m_h;
  const double b = rc.L_k * rc.m_k;
  const double num = a * (rc.L_k * rc.L_A - rc.m_k * rc.m_d) + b * (rc.L_h - rc.m_h);
  const double den = a * (rc.L_k * rc.L_A + rc.m_k * rc.m_d) + b * (rc.L_h + rc.m_h);
  if (!(den > 0.0)) return unavailable("denominator is not positive");
  return linear(num / den);
}

RateValue cg_rate(double L, double m) {
  if (!(L > 0.0) || !std::isfinite(L) || !(m > 0.0) || m > L * (1.0 + 1e-12)) {
    return unavailable("need 0 < m <= L < inf");
  }
  const double sl = std::sqrt(L);
  const double sm = std::sqrt(std::min(m, L));
  return linear((sl - sm) / (sl + sm));
}

ProximalRates proximal_rates(double sc_smooth, double sc_prox, double tau) {
  if (!(tau > 0.0) || sc_smooth < 0.0 || sc_prox < 0.0) {
    return {unavailable("invalid inputs"), unavailable("invalid inputs")};
  }
  const double mu = sc_smooth + sc_prox;
  if (!(mu > 0.0)) {
    return {RateValue{RateRegime::Sublinear, 1.0, "no strong convexity"},
            RateValue{RateRegime::AcceleratedSublinear, 1.0, "no strong convexity"}};
  }
  ProximalRates out;
  out.ista = linear((1.0 - tau * sc_smooth) / (1.0 + tau * sc_prox));
  const double q = tau * mu / (1.0 + tau * sc_prox);
  out.fista = q <= 1.0 ? linear(1.0 - std::sqrt(q)) : unavailable("tau * mu too large");
  return out;
}

RateValue pdhg_rate(double sc_prox_g, double sc_prox_m, double L, double theta) {
  if (!(L > 0.0) || !std::isfinite(L) || sc_prox_g < 0.0 || sc_prox_m < 0.0 || theta < 0.0 || theta > 1.0) {
    return unavailable("invalid inputs");
  }
  const bool g = sc_prox_g > 0.0;
  const bool m = sc_prox_m > 0.0;
  if (g && m) {
    const double mu = 2.0 * std::sqrt(sc_prox_g * sc_prox_m) / L;
    return linear((1.0 + theta) / (2.0 + mu));
  }
  if (g || m) return {RateRegime::AcceleratedSublinear, 1.0, "one side strongly convex"};
  return {RateRegime::Sublinear, 1.0, "neither side strongly convex"};
}

SmoothnessProfile precompose(const SmoothnessProfile& g, const SpectralBounds& B) {
  SmoothnessProfile out;
  out.m = mul_inf(g.m, B.lmin_AtA);
  out.L = mul_inf(g.L, B.lmax_AtA);
  out.smooth = g.smooth || B.lmax_AtA == 0.0;
  return out;
}

SmoothnessProfile add_profiles(const SmoothnessProfile& a, const SmoothnessProfile& b) {
  return {a.m + b.m, a.L + b.L, a.smooth && b.smooth};
}

SmoothnessProfile conjugate_profile(const SmoothnessProfile& g) {
  SmoothnessProfile out;
  out.m = inverse(g.L);
  out.L = inverse(g.m);
  out.smooth = std::isfinite(out.L);
  return out;
}

SmoothnessProfile lemma5_transfer(const SmoothnessProfile& g, const SpectralBounds& B, TransferMode mode) {
  return mode == TransferMode::Precompose ? precompose(g, B) : conjugate_profile(g);
}

Envelopes theorem1_envelopes(const Theorem1Constants& c, double x0_err, int K) {
  if (K < 0) throw InvalidInput("theorem1_envelopes: K must be >= 0");
  if (!(c.omega >= 0.0 && c.omega < 1.0)) throw InvalidInput("theorem1_envelopes: omega must lie in [0, 1)");
  const double lip = c.L_xu + c.L1 * c.L_xx;
  const double C = lip / 2.0 + c.L2 * c.L_x;
  Envelopes env;
  for (int k = 0; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    env.analytic.push_back(c.L_x * x0_err * std::pow(c.omega, kd));
    const double Ck = c.tau * (c.L_x * kd + c.omega / 2.0) * lip;
    // omega^(2k-1) is unbounded at k = 0 when omega = 0; a zero prefactor wins.
    const double aut = Ck * x0_err == 0.0 ? 0.0 : Ck * x0_err * std::pow(c.omega, 2.0 * kd - 1.0);
    env.automatic.push_back(aut);
    env.implicit.push_back(C * x0_err * std::pow(c.omega, 2.0 * kd));
  }
  return env;
}

RateReport rate_report(const StructuredProblem& pr) {
  RateReport r;
  r.constants = regularity_constants(pr);
  r.omega_p = primal_rate(r.constants);
  r.omega_d = dual_rate(r.constants);

  const SmoothnessProfile kc = conjugate_profile(smoothness_profile(pr.k()));
  const SmoothProxSplit hs = split_smooth_prox(conjugate(pr.h()));
  SpectralBounds at{r.constants.L_A, r.constants.m_d, r.constants.m_p};
  SmoothnessProfile smooth = precompose(kc, at);
  if (hs.smooth) smooth = add_profiles(smooth, smoothness_profile(*hs.smooth));
  const double sc_prox = hs.prox ? smoothness_profile(*hs.prox).m : 0.0;
  r.dual_L = smooth.L;
  r.dual_m = smooth.m + sc_prox;

  if (pr.h().holds<SqL2>() && pr.k().holds<SqL2>()) {
    r.omega_cg = cg_rate(smooth.L, smooth.m);
  } else {
    r.omega_cg = unavailable("dual is not a quadratic");
  }
  if (std::isfinite(smooth.L) && smooth.L > 0.0) {
    const ProximalRates pr_rates = proximal_rates(smooth.m, sc_prox, 1.0 / smooth.L);
    r.omega_ista = pr_rates.ista;
    r.omega_fista = pr_rates.fista;
  } else {
    r.omega_ista = unavailable("dual smooth part has no finite Lipschitz constant");
    r.omega_fista = r.omega_ista;
  }
  const double sc_g = conjugate_profile(smoothness_profile(pr.h())).m;
  const double sc_m = smoothness_profile(pr.k()).m;
  const double opnorm = std::sqrt(r.constants.L_A);
  if (sc_g > 0.0 && sc_m > 0.0 && opnorm > 0.0) {
    const double mu = 2.0 * std::sqrt(sc_g * sc_m) / opnorm;
    r.omega_pdhg = pdhg_rate(sc_g, sc_m, opnorm, 1.0 / (1.0 + mu));
  } else {
    r.omega_pdhg = pdhg_rate(sc_g, sc_m, opnorm, 1.0);
  }
  return r;
}

}  // namespace valuegrad
