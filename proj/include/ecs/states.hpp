#pragma once

#include "ecs/linalg.hpp"

namespace ecs {

// Two-mode entangled coherent state |a1>|a2> + e^{i phi} |-a1>|-a2>, normalized.
struct EcsParams {
  cx alpha1;
  cx alpha2;
  double phi;  // relative phase, stored in [0, 2pi)
};

// Validates finiteness, reduces phi, rejects the null superposition.
EcsParams ecs_params(cx alpha1, cx alpha2, double phi);

// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
cx coherent_overlap(cx a, cx b);

// N = [2 + 2 cos(phi) exp(-2|a1|^2 - 2|a2|^2)]^{-1/2}; throws NullState when
// the bracket degenerates (a1 = a2 = 0, phi = pi).
double ecs_normalization(const EcsParams& p);

// Even/odd superpositions of |a'> and |-a'>: N_pm = [2 +- 2 exp(-2|a'|^2)]^{-1/2}.
struct CatNormalization {
  double n_plus;
  double n_minus;
};

// DegenerateInput below |a'| = 1e-6 (odd branch ill-conditioned).
CatNormalization cat_normalization(cx alpha_prime);

// Orthonormal one-mode qubit basis for the pair {|a_t>, |-a_t>}:
//   |1> = |a_t>,   |0> = (|-a_t> - eta |1>) / s,   eta = exp(-2|a_t|^2),
// so |-a_t> = eta |1> + s |0> with s = sqrt(1 - eta^2).
struct QubitEncoding {
  cx alpha_t;
  double eta;
  double s;
};

// SingularEncoding when 1 - eta^2 < 1e-12 (mode degenerates to one dimension).
QubitEncoding qubit_encoding(cx alpha_t);

}  // namespace ecs
