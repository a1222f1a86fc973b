#include "ecs/teleportation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "ecs/oracle.hpp"

namespace ecs {

namespace {

void validate(const TeleportParams& p) {
  if (!std::isfinite(p.alpha_prime) || !std::isfinite(p.alpha) || !std::isfinite(p.gamma_t))
    throw NotFinite("teleport: non-finite parameter");
  if (p.alpha_prime <= 0 || p.alpha <= 0)
    throw NonPositive("teleport: amplitudes must be > 0");
  if (p.alpha_prime < 1e-6 || p.alpha < 1e-6)
    throw DegenerateInput("teleport: amplitude below the odd-cat threshold");
  if (p.gamma_t < 0) throw NegativeTime("teleport: gamma_t < 0");
}

}  // namespace

FidelityIntermediates fidelity_intermediates(const TeleportParams& p) {
  validate(p);
  const double l = std::exp(-p.gamma_t);
  const double d2 = -std::expm1(-p.gamma_t);  // exact 0 at gamma_t = 0, so beta = -1 there
  const double a2 = p.alpha * p.alpha;
  const double e2 = std::exp(-2.0 * p.alpha_prime * p.alpha_prime);
  const double x = std::exp(-0.5 * p.gamma_t) * p.alpha_prime * p.alpha;
  const double chx = std::cosh(x), shx = std::sinh(x);
  FidelityIntermediates f;
  f.eta = std::exp(-2.0 * l * a2);
  f.beta = -std::exp(-4.0 * d2 * a2);
  f.mu = chx * chx / (2.0 + 2.0 * e2);
  f.nu = shx * shx / (2.0 - 2.0 * e2);
  return f;
}

double success_probability(const TeleportParams& p) {
  validate(p);
  const double l = std::exp(-p.gamma_t);
  const double a2 = p.alpha * p.alpha;
  const double ap2 = p.alpha_prime * p.alpha_prime;
  const double e2 = std::exp(-2.0 * ap2);
  const double na2 = 1.0 / (2.0 - 2.0 * std::exp(-4.0 * a2));
  const double q = std::exp(2.0 * l * a2 - 4.0 * a2);
  const double env = std::exp(-ap2 - l * a2);
  const double ch = std::cosh(2.0 * std::exp(-0.5 * p.gamma_t) * p.alpha_prime * p.alpha);
  const double ps = na2 * env *
                    ((1.0 + q) * (ch - 1.0) / (2.0 - 2.0 * e2) +
                     (1.0 - q) * (ch + 1.0) / (2.0 + 2.0 * e2));
  return std::clamp(ps, 0.0, 1.0);
}

std::pair<double, double> stable_log_ratio_kernel(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw NotFinite("stable_log_ratio_kernel: non-finite input");
  if (a <= 0 || b <= 0) throw NonPositive("stable_log_ratio_kernel: inputs must be > 0");
  const double diff = a - b;
  if (std::abs(diff) <= 1e-4 * b) {
    // ln(1+e)/(B e) and its cubed-difference partner, expanded about e = 0;
    // truncation after e^5 is ~1e-25 relative at the switchover
    const double e = diff / b;
    const double k1 =
        (1.0 - e * (0.5 - e * (1.0 / 3.0 - e * (0.25 - e * (0.2 - e / 6.0))))) / b;
    const double k2 =
        (1.0 / 3.0 -
         e * (1.0 / 6.0 - e * (0.1 - e * (1.0 / 15.0 - e * (1.0 / 21.0 - e / 28.0))))) /
        b;
    return {k1, k2};
  }
  const double lr = std::log1p(diff / b);
  const double k1 = lr / diff;
  // A^2 - B^2 as diff * (a + b) sidesteps one cancellation
  const double k2 = (diff * (a + b) - 2.0 * a * b * lr) / (diff * diff * diff);
  return {k1, k2};
}

double mean_fidelity(const TeleportParams& p) {
  const FidelityIntermediates f = fidelity_intermediates(p);
  const double be = f.beta * f.eta;
  const double a = f.nu * (1.0 - be);
  const double b = f.mu * (1.0 + be);
  const auto [k1, k2] = stable_log_ratio_kernel(a, b);
  const double env =
      std::exp(-p.alpha_prime * p.alpha_prime - std::exp(-p.gamma_t) * p.alpha * p.alpha);
  const double fid = 2.0 * env *
                     (2.0 * (1.0 - f.beta) * f.mu * f.nu * k1 +
                      (1.0 + f.beta) * (f.mu * f.mu + f.nu * f.nu) * k2);
  return std::clamp(fid, 0.0, 1.0 + 1e-9);
}

std::vector<RevivalTriple> revival_search(double alpha_prime,
                                          const std::vector<double>& alpha_grid,
                                          const std::vector<double>& d_grid,
                                          unsigned workers) {
  if (alpha_grid.empty() || d_grid.empty())
    throw InvalidGrid("revival_search: empty grid");
  if (workers == 0) workers = 1;
  const std::size_t na = alpha_grid.size(), nd = d_grid.size();
  std::vector<double> fval(na * nd);

  auto point = [&](std::size_t k) {
    const double alpha = alpha_grid[k / nd];
    const double gt = decay_params_from_d(d_grid[k % nd]).gamma_t;
    fval[k] = mean_fidelity(TeleportParams{alpha_prime, alpha, gt});
  };

  if (workers == 1 || fval.size() < 2) {
    for (std::size_t k = 0; k < fval.size(); ++k) point(k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < fval.size(); k += workers) point(k);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  std::vector<RevivalTriple> out;
  const double classical = 2.0 / 3.0;
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t i = 0; i < nd; ++i)
      for (std::size_t j = 0; j < nd; ++j) {
        if (!(d_grid[j] > d_grid[i])) continue;
        const double f1 = fval[ia * nd + i], f2 = fval[ia * nd + j];
        if (f2 > f1 && f2 > classical)
          out.push_back(RevivalTriple{alpha_grid[ia], d_grid[i], d_grid[j], f1, f2});
      }
  return out;
}

std::array<std::vector<cx>, 4> bell_states(double alpha_a, double alpha_b, std::size_t dim) {
  const FockVector pa = fock_cat(alpha_a, +1, dim), ma = fock_cat(alpha_a, -1, dim);
  const FockVector pb = fock_cat(alpha_b, +1, dim), mb = fock_cat(alpha_b, -1, dim);

  auto pair = [dim](const FockVector& x, const FockVector& y, const FockVector& u,
                    const FockVector& v, double sign) {
    std::vector<cx> out(dim * dim);
    const double inv = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        out[i * dim + j] = inv * (x.amp[i] * y.amp[j] + sign * u.amp[i] * v.amp[j]);
    return out;
  };

  return {pair(pa, mb, ma, pb, +1.0),   // Phi+ (the accepted outcome)
          pair(pa, mb, ma, pb, -1.0),   // Phi-
          pair(pa, pb, ma, mb, +1.0),   // Psi+
          pair(pa, pb, ma, mb, -1.0)};  // Psi-
}

}  // namespace ecs
