#include "ecs/channels.hpp"

#include <cmath>

namespace ecs {

DecayParams decay_params(double gamma_t) {
  if (!std::isfinite(gamma_t)) throw NotFinite("decay_params: gamma_t not finite");
  if (gamma_t < 0) throw NegativeTime("decay_params: gamma_t < 0");
  // -expm1 keeps d accurate at small times
  return DecayParams{gamma_t, std::sqrt(-std::expm1(-gamma_t))};
}

DecayParams decay_params_from_d(double d) {
  if (!std::isfinite(d)) throw NotFinite("decay_params_from_d: d not finite");
  if (d < 0 || d >= 1) throw OutOfRange("decay_params_from_d: need 0 <= d < 1");
  return DecayParams{-std::log1p(-d * d), d};
}

DecayedEcs evolve_ecs(const EcsParams& p, const DecayParams& dp) {
  if (!std::isfinite(dp.gamma_t) || !std::isfinite(dp.d))
    throw NotFinite("evolve_ecs: decay parameters not finite");
  if (dp.gamma_t < 0) throw NegativeTime("evolve_ecs: gamma_t < 0");
  const double l = std::exp(-0.5 * dp.gamma_t);  // amplitude survival e^{-gamma_t/2}
  const double s1 = std::norm(p.alpha1), s2 = std::norm(p.alpha2);

  DecayedEcs e;
  e.alpha1_t = l * p.alpha1;
  e.alpha2_t = l * p.alpha2;
  e.eta1 = std::exp(-2.0 * std::norm(e.alpha1_t));
  e.eta2 = std::exp(-2.0 * std::norm(e.alpha2_t));
  // which-path leakage into the environment scales the cross dyad
  e.beta12 = std::exp(cx(-2.0 * dp.d * dp.d * (s1 + s2), -p.phi));
  const double denom = 2.0 + 2.0 * std::cos(p.phi) * std::exp(-2.0 * (s1 + s2));
  if (!(denom > 0.0)) throw NullState("evolve_ecs: zero-norm superposition");
  e.norm = 1.0 / std::sqrt(denom);
  return e;
}

Matrix two_qubit_density(const DecayedEcs& e) {
  // Coordinates of |a_t, b_t> and |-a_t, -b_t> in the encoded product basis
  // |11>,|10>,|01>,|00>; the state is the rank-<=2 mixture over those two
  // vectors with cross weight beta12.
  const QubitEncoding q1 = qubit_encoding(e.alpha1_t);
  const QubitEncoding q2 = qubit_encoding(e.alpha2_t);

  const double wp[4] = {1.0, 0.0, 0.0, 0.0};
  const double wm[4] = {q1.eta * q2.eta, q1.eta * q2.s, q1.s * q2.eta, q1.s * q2.s};

  const double n2 = e.norm * e.norm;
  Matrix rho(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cx v = cx(wp[i] * wp[j] + wm[i] * wm[j], 0.0);
      v += e.beta12 * (wp[i] * wm[j]);
      v += std::conj(e.beta12) * (wm[i] * wp[j]);
      rho(i, j) = n2 * v;
    }
  return rho;
}

NoisyChannel noisy_channel(cx alpha, const DecayParams& dp) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw NotFinite("noisy_channel: alpha not finite");
  if (std::abs(alpha) < 1e-6)
    throw DegenerateInput("noisy_channel: odd-cat resource degenerates as alpha -> 0");
  if (dp.gamma_t < 0) throw NegativeTime("noisy_channel: gamma_t < 0");
  const double a2 = std::norm(alpha);
  NoisyChannel ch;
  ch.alpha_t = std::exp(-0.5 * dp.gamma_t) * alpha;
  ch.beta = -std::exp(-4.0 * dp.d * dp.d * a2);
  ch.n_alpha = 1.0 / std::sqrt(2.0 - 2.0 * std::exp(-4.0 * a2));
  return ch;
}

}  // namespace ecs
