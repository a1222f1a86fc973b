#include "ecs/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace ecs {

double binary_entropy(double x) {
  if (!std::isfinite(x)) throw NotFinite("binary_entropy: input not finite");
  if (x < -1e-12 || x > 1.0 + 1e-12) throw OutOfRange("binary_entropy: input outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

EofResult pure_ecs_eigenvalues(const EcsParams& p) {
  const double s1 = std::norm(p.alpha1), s2 = std::norm(p.alpha2);
  const double denom = 2.0 + 2.0 * std::cos(p.phi) * std::exp(-2.0 * (s1 + s2));
  if (!(denom > 0.0)) throw NullState("pure_ecs_eigenvalues: zero-norm superposition");
  const double g1 = 1.0 - std::exp(-4.0 * s1);
  const double g2 = 1.0 - std::exp(-4.0 * s2);
  // N^4 g1 g2 grouped as a single quotient: at the symmetric phi = pi point
  // denom = 2 g and the ratio collapses to exactly 1/4, so lambda_pm = 1/2
  // without roundoff and the entropy below is exactly 1 bit.
  const double ratio = (g1 * g2) / (denom * denom);
  double disc = 0.25 - ratio;
  if (disc < 0.0) disc = 0.0;
  const double r = std::sqrt(disc);
  EofResult out;
  out.lambda_plus = 0.5 + r;
  out.lambda_minus = 0.5 - r;
  out.eof_bits = binary_entropy(out.lambda_plus);
  return out;
}

ConcurrenceResult concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionMismatch("concurrence: need a 4x4 density matrix");
  require_finite(rho);
  if (hermiticity_defect(rho) > 1e-8)
    throw NotHermitian("concurrence: density matrix not Hermitian within 1e-8");
  if (std::abs(rho.trace() - cx(1.0)) > 1e-8)
    throw NotDensityMatrix("concurrence: trace differs from 1 by more than 1e-8");
  const Matrix h = cx(0.5) * (rho + rho.adjoint());

  Matrix sy(2, 2);
  sy(0, 1) = cx(0.0, 1.0);   // basis order |1>, |0>
  sy(1, 0) = cx(0.0, -1.0);
  const Matrix yy = kron(sy, sy);

  const Matrix s = psd_sqrt(h);  // NotPSD below -1e-8
  const Matrix tilde = yy * h.conjugate() * yy;
  const Spectrum sp = hermitian_eig(psd_sqrt(s * tilde * s));

  ConcurrenceResult res{};
  for (int i = 0; i < 4; ++i) res.roots[i] = std::max(0.0, sp.values[i]);
  // rank-deficient inputs leave O(eps) junk eigenvalues; below 1e-6 of the
  // leading root is noise, not spectrum
  for (int i = 1; i < 4; ++i)
    if (res.roots[i] < 1e-6 * res.roots[0]) res.roots[i] = 0.0;
  res.concurrence =
      std::max(0.0, res.roots[0] - res.roots[1] - res.roots[2] - res.roots[3]);
  return res;
}

double eof_from_concurrence(double c) {
  if (!std::isfinite(c)) throw NotFinite("eof_from_concurrence: input not finite");
  if (c < -1e-12 || c > 1.0 + 1e-12)
    throw OutOfRange("eof_from_concurrence: concurrence outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 + 0.5 * std::sqrt(1.0 - c * c));
}

double mixed_ecs_eof(const EcsParams& p, const DecayParams& dp) {
  const DecayedEcs e = evolve_ecs(p, dp);
  Matrix rho;
  try {
    rho = two_qubit_density(e);
  } catch (const SingularEncoding&) {
    return 0.0;  // a collapsed mode factorizes; nothing left to share
  }
  return eof_from_concurrence(concurrence(rho).concurrence);
}

}  // namespace ecs
