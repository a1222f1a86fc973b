#include "ecs/states.hpp"

#include <cmath>
#include <numbers>

namespace ecs {

EcsParams ecs_params(cx alpha1, cx alpha2, double phi) {
  if (!std::isfinite(alpha1.real()) || !std::isfinite(alpha1.imag()) ||
      !std::isfinite(alpha2.real()) || !std::isfinite(alpha2.imag()) || !std::isfinite(phi))
    throw NotFinite("ecs_params: non-finite input");
  if (std::abs(alpha1) == 0.0 && std::abs(alpha2) == 0.0)
    throw NullState("ecs_params: alpha1 = alpha2 = 0 leaves no superposition");
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);  // fmod is exact, so phi = pi survives untouched
  if (r < 0) r += two_pi;
  return EcsParams{alpha1, alpha2, r};
}

cx coherent_overlap(cx a, cx b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

double ecs_normalization(const EcsParams& p) {
  const double s1 = std::norm(p.alpha1), s2 = std::norm(p.alpha2);
  const double denom = 2.0 + 2.0 * std::cos(p.phi) * std::exp(-2.0 * (s1 + s2));
  if (!(denom > 0.0)) throw NullState("ecs_normalization: zero-norm superposition");
  return 1.0 / std::sqrt(denom);
}

CatNormalization cat_normalization(cx alpha_prime) {
  if (std::abs(alpha_prime) < 1e-6)
    throw DegenerateInput("cat_normalization: odd cat degenerates as alpha' -> 0");
  const double q = std::exp(-2.0 * std::norm(alpha_prime));
  return CatNormalization{1.0 / std::sqrt(2.0 + 2.0 * q), 1.0 / std::sqrt(2.0 - 2.0 * q)};
}

QubitEncoding qubit_encoding(cx alpha_t) {
  const double eta = std::exp(-2.0 * std::norm(alpha_t));
  const double one_minus = 1.0 - eta * eta;
  if (one_minus < 1e-12)
    throw SingularEncoding("qubit_encoding: |alpha> and |-alpha> are indistinguishable");
  return QubitEncoding{alpha_t, eta, std::sqrt(one_minus)};
}

}  // namespace ecs
