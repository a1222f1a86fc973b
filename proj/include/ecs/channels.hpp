#pragma once

#include "ecs/states.hpp"

namespace ecs {

// Vacuum amplitude damping, parameterized by the dimensionless time gamma_t;
// d = sqrt(1 - e^{-gamma_t}) is the degree of decay.
struct DecayParams {
  double gamma_t;
  double d;
};

DecayParams decay_params(double gamma_t);     // NegativeTime / NotFinite
DecayParams decay_params_from_d(double d);    // OutOfRange unless 0 <= d < 1

// Closed form of the decohered ECS: a rank-<=2 mixture over the decayed
// coherent pair, with cross coefficient beta12 = exp(-i phi - 2 d^2 (|a1|^2+|a2|^2))
// attached to the |a1(t) a2(t)><-a1(t) -a2(t)| dyad.
struct DecayedEcs {
  cx alpha1_t;
  cx alpha2_t;
  double eta1;
  double eta2;
  cx beta12;
  double norm;  // N_phi of the undecayed state
};

DecayedEcs evolve_ecs(const EcsParams& p, const DecayParams& dp);

// 4x4 density matrix in the encoded product basis |11>,|10>,|01>,|00>
// (|1> = decayed-amplitude ket, mode 1 slower index). Built from the two Gram
// vectors of the mixture rather than the expanded 11-term formula.
Matrix two_qubit_density(const DecayedEcs& e);

// Decayed phi = pi channel with equal amplitudes: rank-2 mixture over
// |a(t)>|a(t)> and |-a(t)>|-a(t)> with real cross weight beta.
struct NoisyChannel {
  cx alpha_t;
  double beta;     // -exp(-4 d^2 |a|^2), in [-1, 0)
  double n_alpha;  // (2 - 2 e^{-4|a|^2})^{-1/2}
};

NoisyChannel noisy_channel(cx alpha, const DecayParams& dp);  // DegenerateInput

}  // namespace ecs
