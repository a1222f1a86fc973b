#pragma once

#include <array>

#include "ecs/channels.hpp"

namespace ecs {

struct EofResult {
  double lambda_plus;
  double lambda_minus;
  double eof_bits;
};

struct ConcurrenceResult {
  double concurrence;
  std::array<double, 4> roots;  // descending
};

// h(x) = -x log2 x - (1-x) log2 (1-x); input clamped within 1e-12 slack.
double binary_entropy(double x);

// Reduced-state eigenvalues of the pure ECS:
//   lambda_pm = 1/2 +- sqrt(1/4 - N^4 (1 - e^{-4|a1|^2})(1 - e^{-4|a2|^2}))
// and the entanglement of formation h(lambda_plus) in bits.
EofResult pure_ecs_eigenvalues(const EcsParams& p);

// Wootters concurrence of a 4x4 density matrix (basis |11>,|10>,|01>,|00>).
// Roots are the eigenvalues of psd_sqrt(S rho~ S), S = psd_sqrt(rho),
// rho~ = (sy x sy) conj(rho) (sy x sy) -- the Hermitian equivalent of the
// spin-flipped product spectrum.
ConcurrenceResult concurrence(const Matrix& rho);

// h(1/2 + 1/2 sqrt(1 - c^2))
double eof_from_concurrence(double c);

// Full decoherence pipeline; fully decayed (singular-encoding) states are
// separable and report zero.
double mixed_ecs_eof(const EcsParams& p, const DecayParams& dp);

}  // namespace ecs
