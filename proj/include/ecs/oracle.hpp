#pragma once

#include <cstdint>

#include "ecs/entanglement.hpp"
#include "ecs/teleportation.hpp"

namespace ecs {

// Truncated number-basis state, one mode.
struct FockVector {
  std::size_t dim = 0;
  std::vector<cx> amp;
};

// Coefficients e^{-|a|^2/2} a^n / sqrt(n!), renormalized. The dropped Poisson
// tail must stay below 1e-12 or TruncationInsufficient is thrown.
FockVector fock_coherent(cx alpha, std::size_t dim);

// N_pm (|a> +- |-a>), renormalized in the truncated space. sign = +1 / -1.
FockVector fock_cat(cx alpha, int sign, std::size_t dim);

// Two-mode amplitude damping: rho(t) = sum_{n1,n2} w L a1^n1 a2^n2 rho a1+^n1 a2+^n2 L,
// w = (1-e^{-gamma_t})^{n1+n2}/(n1! n2!), L = e^{-gamma_t n_hat / 2} per mode.
// The lowering series terminates exactly in the truncated space; the final
// trace must match the input within 1e-10 (else TruncationInsufficient).
Matrix kraus_evolve(const Matrix& rho, double gamma_t, std::size_t dim);

// Rank-1 fast path: same map applied to |v><v| shell by shell.
Matrix kraus_evolve_pure(const std::vector<cx>& v, double gamma_t, std::size_t dim);

// Brute-force EoF: entropy of the reduced state when gamma_t = 0, otherwise
// Kraus evolution, projection onto the 4-dim encoded subspace (defect must be
// < 1e-9), concurrence, eof. Independent of the closed-form pipeline.
double oracle_eof(const EcsParams& p, double gamma_t, std::size_t dim);

struct ProtocolSample {
  double theta;
  double chi;
  bool success;      // Bernoulli draw against the Phi+ weight
  double weight;     // exact Phi+ projection weight for this input
  double fidelity;   // conditional fidelity of the accepted branch
};

struct ProtocolStats {
  std::size_t samples = 0;
  double success_rate = 0, rate_se = 0;        // from the Bernoulli draws
  double weight_mean = 0, weight_se = 0;       // from the exact weights
  double fidelity_mean = 0, fidelity_se = 0;
  double fidelity_min = 0, fidelity_max = 0;
};

// Monte-Carlo run of the protocol: inputs uniform on the Bloch sphere of the
// even/odd qubit, Bell measurement on modes (a, 1), Bob-state fidelity against
// the alpha_prime-encoded reference. Sample k depends only on (seed, k), so
// results are bit-identical for any worker count.
std::vector<ProtocolSample> simulate_protocol_samples(const TeleportParams& p,
                                                      std::size_t dim,
                                                      std::size_t samples,
                                                      std::uint64_t seed,
                                                      unsigned workers = 1);

ProtocolStats simulate_protocol(const TeleportParams& p, std::size_t dim,
                                std::size_t samples, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace ecs
