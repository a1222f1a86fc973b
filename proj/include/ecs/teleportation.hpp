#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ecs/channels.hpp"

namespace ecs {

// One-classical-bit probabilistic teleportation of a cat-qubit of amplitude
// alpha_prime through the decayed phi = pi channel of amplitude alpha.
// Amplitudes are real positive (common phase assumed and discarded).
struct TeleportParams {
  double alpha_prime;
  double alpha;
  double gamma_t;
};

struct FidelityIntermediates {
  double eta;   // exp(-2 e^{-gamma_t} alpha^2)
  double beta;  // -exp(-4 d^2 alpha^2)
  double mu;    // N_plus^2 cosh^2(e^{-gamma_t/2} alpha_prime alpha)
  double nu;    // N_minus^2 sinh^2(e^{-gamma_t/2} alpha_prime alpha)
};

FidelityIntermediates fidelity_intermediates(const TeleportParams& p);

// Mean weight of the accepted Bell outcome, averaged over input qubits.
double success_probability(const TeleportParams& p);

// Mean conditional fidelity of the accepted branch. Singular exactly where the
// protocol is perfect (alpha_prime = alpha, d = 0); evaluated through
// stable_log_ratio_kernel so that point reports 1.
double mean_fidelity(const TeleportParams& p);

// (ln(A/B)/(A-B), (A^2 - B^2 - 2AB ln(A/B))/(A-B)^3), switching to series in
// (A-B)/B once |A-B| <= 1e-4 B; limits 1/B and 1/(3B) at A = B.
std::pair<double, double> stable_log_ratio_kernel(double a, double b);

struct RevivalTriple {
  double alpha;
  double d1;
  double d2;
  double f1;
  double f2;
};

// Deterministic scan: every (alpha, d1, d2) with d2 > d1, F(d2) > F(d1) and
// F(d2) > 2/3. Output is independent of the worker count (values are computed
// per grid point, then pairs enumerated in fixed order). Empty is a valid result.
std::vector<RevivalTriple> revival_search(double alpha_prime,
                                          const std::vector<double>& alpha_grid,
                                          const std::vector<double>& d_grid,
                                          unsigned workers = 1);

// Bell basis on modes (a, 1), both carrying cats of the given amplitudes,
// embedded in a dim-per-mode Fock space:
//   Phi_pm = (even x odd +- odd x even)/sqrt2,
//   Psi_pm = (even x even +- odd x odd)/sqrt2.
// Returned in the order Phi+, Phi-, Psi+, Psi-; the protocol accepts Phi+.
std::array<std::vector<cx>, 4> bell_states(double alpha_a, double alpha_b, std::size_t dim);

}  // namespace ecs
