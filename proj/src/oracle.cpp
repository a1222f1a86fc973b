#include "ecs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace ecs {

namespace {

void check_dim(std::size_t dim) {
  if (dim < 2 || dim > 64) throw OutOfRange("oracle: fock dimension must be in [2, 64]");
}

double norm2(const std::vector<cx>& v) {
  double s = 0;
  for (const cx& x : v) s += std::norm(x);
  return s;
}

// mode-1 lowering on a dim x dim reshaped two-mode vector
std::vector<cx> lower1(const std::vector<cx>& v, std::size_t dim) {
  std::vector<cx> out(v.size());
  for (std::size_t i = 0; i + 1 < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      out[i * dim + j] = std::sqrt(double(i + 1)) * v[(i + 1) * dim + j];
  return out;
}

std::vector<cx> lower2(const std::vector<cx>& v, std::size_t dim) {
  std::vector<cx> out(v.size());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j + 1 < dim; ++j)
      out[i * dim + j] = std::sqrt(double(j + 1)) * v[i * dim + (j + 1)];
  return out;
}

// a1^n rho a1^dag^n (one step); mode selects which factor index is lowered
Matrix lower_conj(const Matrix& rho, std::size_t dim, int mode) {
  const std::size_t total = dim * dim;
  Matrix out(total, total);
  for (std::size_t r = 0; r < total; ++r) {
    const std::size_t i1 = r / dim, i2 = r % dim;
    const std::size_t ri = (mode == 1) ? i1 : i2;
    if (ri + 1 >= dim) continue;
    const std::size_t rs = (mode == 1) ? (i1 + 1) * dim + i2 : i1 * dim + (i2 + 1);
    const double fr = std::sqrt(double(ri + 1));
    for (std::size_t c = 0; c < total; ++c) {
      const std::size_t j1 = c / dim, j2 = c % dim;
      const std::size_t ci = (mode == 1) ? j1 : j2;
      if (ci + 1 >= dim) continue;
      const std::size_t cs = (mode == 1) ? (j1 + 1) * dim + j2 : j1 * dim + (j2 + 1);
      out(r, c) = fr * std::sqrt(double(ci + 1)) * rho(rs, cs);
    }
  }
  return out;
}

struct SampleRng {
  std::uint64_t state;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  SampleRng(std::uint64_t seed, std::uint64_t idx)
      : state(mix(seed ^ mix(idx * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL))) {}

  // splitmix64 stream; 53-bit mantissa in [0, 1)
  double uniform() {
    state += 0x9E3779B97F4A7C15ULL;
    return double(mix(state) >> 11) * 0x1.0p-53;
  }
};

}  // namespace

FockVector fock_coherent(cx alpha, std::size_t dim) {
  check_dim(dim);
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw NotFinite("fock_coherent: alpha not finite");
  FockVector v;
  v.dim = dim;
  v.amp.resize(dim);
  cx c = std::exp(cx(-0.5 * std::norm(alpha), 0.0));
  double captured = 0;
  for (std::size_t n = 0; n < dim; ++n) {
    v.amp[n] = c;
    captured += std::norm(c);
    c *= alpha / std::sqrt(double(n + 1));
  }
  if (1.0 - captured > 1e-12)
    throw TruncationInsufficient("fock_coherent: dropped Poisson tail exceeds 1e-12");
  const double inv = 1.0 / std::sqrt(captured);
  for (cx& x : v.amp) x *= inv;
  return v;
}

FockVector fock_cat(cx alpha, int sign, std::size_t dim) {
  if (sign != 1 && sign != -1) throw OutOfRange("fock_cat: sign must be +1 or -1");
  if (std::abs(alpha) < 1e-6)
    throw DegenerateInput("fock_cat: cat degenerates as alpha -> 0");
  const FockVector p = fock_coherent(alpha, dim);
  const FockVector m = fock_coherent(-alpha, dim);
  FockVector v;
  v.dim = dim;
  v.amp.resize(dim);
  for (std::size_t n = 0; n < dim; ++n)
    v.amp[n] = p.amp[n] + double(sign) * m.amp[n];
  const double n2 = norm2(v.amp);
  if (n2 < 1e-300) throw DegenerateInput("fock_cat: null superposition");
  const double inv = 1.0 / std::sqrt(n2);
  for (cx& x : v.amp) x *= inv;
  return v;
}

Matrix kraus_evolve(const Matrix& rho, double gamma_t, std::size_t dim) {
  check_dim(dim);
  const std::size_t total = dim * dim;
  if (rho.rows() != total || rho.cols() != total)
    throw DimensionMismatch("kraus_evolve: rho must be dim^2 x dim^2");
  require_finite(rho);
  if (!std::isfinite(gamma_t)) throw NotFinite("kraus_evolve: gamma_t not finite");
  if (gamma_t < 0) throw NegativeTime("kraus_evolve: gamma_t < 0");

  const double lam = -std::expm1(-gamma_t);
  std::vector<double> lhalf(dim);
  for (std::size_t n = 0; n < dim; ++n) lhalf[n] = std::exp(-0.5 * gamma_t * double(n));

  Matrix acc(total, total);
  Matrix b1 = rho;
  double w1 = 1.0;
  for (std::size_t n1 = 0; n1 < dim; ++n1) {
    if (n1 > 0) {
      b1 = lower_conj(b1, dim, 1);
      w1 *= lam / double(n1);
      if (b1.frobenius_norm() == 0.0 || w1 == 0.0) break;
    }
    Matrix b = b1;
    double w = w1;
    for (std::size_t n2 = 0; n2 < dim; ++n2) {
      if (n2 > 0) {
        b = lower_conj(b, dim, 2);
        w *= lam / double(n2);
        if (b.frobenius_norm() == 0.0 || w == 0.0) break;
      }
      for (std::size_t r = 0; r < total; ++r) {
        const double lr = lhalf[r / dim] * lhalf[r % dim];
        for (std::size_t c = 0; c < total; ++c)
          acc(r, c) += w * lr * lhalf[c / dim] * lhalf[c % dim] * b(r, c);
      }
    }
  }

  if (std::abs(acc.trace() - rho.trace()) > 1e-10)
    throw TruncationInsufficient("kraus_evolve: trace not preserved within 1e-10");
  return acc;
}

Matrix kraus_evolve_pure(const std::vector<cx>& v, double gamma_t, std::size_t dim) {
  check_dim(dim);
  const std::size_t total = dim * dim;
  if (v.size() != total) throw DimensionMismatch("kraus_evolve_pure: vector must have dim^2 entries");
  for (const cx& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw NotFinite("kraus_evolve_pure: vector entry not finite");
  if (!std::isfinite(gamma_t)) throw NotFinite("kraus_evolve_pure: gamma_t not finite");
  if (gamma_t < 0) throw NegativeTime("kraus_evolve_pure: gamma_t < 0");

  const double lam = -std::expm1(-gamma_t);
  std::vector<double> lhalf(dim);
  for (std::size_t n = 0; n < dim; ++n) lhalf[n] = std::exp(-0.5 * gamma_t * double(n));

  Matrix acc(total, total);
  std::vector<cx> v1 = v;
  std::vector<cx> scaled(total);
  double w1 = 1.0;
  for (std::size_t n1 = 0; n1 < dim; ++n1) {
    if (n1 > 0) {
      v1 = lower1(v1, dim);
      w1 *= lam / double(n1);
      if (norm2(v1) == 0.0 || w1 == 0.0) break;
    }
    std::vector<cx> vv = v1;
    double w = w1;
    for (std::size_t n2 = 0; n2 < dim; ++n2) {
      if (n2 > 0) {
        vv = lower2(vv, dim);
        w *= lam / double(n2);
        if (w == 0.0) break;
      }
      const double sq = norm2(vv);
      if (sq == 0.0) break;
      if (w * sq < 1e-20) continue;  // below any tolerance this feeds
      for (std::size_t r = 0; r < total; ++r)
        scaled[r] = lhalf[r / dim] * lhalf[r % dim] * vv[r];
      for (std::size_t r = 0; r < total; ++r) {
        if (scaled[r] == cx{}) continue;
        const cx wr = w * scaled[r];
        for (std::size_t c = 0; c < total; ++c)
          acc(r, c) += wr * std::conj(scaled[c]);
      }
    }
  }

  if (std::abs(acc.trace() - cx(norm2(v))) > 1e-10)
    throw TruncationInsufficient("kraus_evolve_pure: trace not preserved within 1e-10");
  return acc;
}

double oracle_eof(const EcsParams& p, double gamma_t, std::size_t dim) {
  check_dim(dim);
  if (!std::isfinite(gamma_t)) throw NotFinite("oracle_eof: gamma_t not finite");
  if (gamma_t < 0) throw NegativeTime("oracle_eof: gamma_t < 0");

  const FockVector a1p = fock_coherent(p.alpha1, dim), a1m = fock_coherent(-p.alpha1, dim);
  const FockVector a2p = fock_coherent(p.alpha2, dim), a2m = fock_coherent(-p.alpha2, dim);
  const cx ph = std::exp(cx(0.0, p.phi));
  std::vector<cx> psi(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      psi[i * dim + j] = a1p.amp[i] * a2p.amp[j] + ph * (a1m.amp[i] * a2m.amp[j]);
  const double n2 = norm2(psi);
  if (n2 < 1e-300) throw NullState("oracle_eof: zero-norm superposition");
  const double inv = 1.0 / std::sqrt(n2);
  for (cx& x : psi) x *= inv;

  if (gamma_t == 0.0) {
    // pure state: entropy of the mode-1 reduced density
    Matrix red(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) {
        cx acc = 0;
        for (std::size_t j = 0; j < dim; ++j)
          acc += psi[i * dim + j] * std::conj(psi[k * dim + j]);
        red(i, k) = acc;
      }
    return von_neumann_entropy(red);
  }

  const Matrix rho = kraus_evolve_pure(psi, gamma_t, dim);

  // orthonormal encoded basis per decayed mode
  const double l = std::exp(-0.5 * gamma_t);
  const QubitEncoding q1 = qubit_encoding(l * p.alpha1);
  const QubitEncoding q2 = qubit_encoding(l * p.alpha2);
  auto mode_basis = [&](const QubitEncoding& q) {
    const FockVector one = fock_coherent(q.alpha_t, dim);
    const FockVector minus = fock_coherent(-q.alpha_t, dim);
    std::array<std::vector<cx>, 2> b;
    b[0] = one.amp;
    b[1].resize(dim);
    for (std::size_t n = 0; n < dim; ++n)
      b[1][n] = (minus.amp[n] - q.eta * one.amp[n]) / q.s;
    return b;
  };
  const auto b1 = mode_basis(q1), b2 = mode_basis(q2);

  std::array<std::vector<cx>, 4> e;  // |11>, |10>, |01>, |00>
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::vector<cx> prod(dim * dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) prod[i * dim + j] = b1[a][i] * b2[b][j];
      e[a * 2 + b] = std::move(prod);
    }

  Matrix rq(4, 4);
  for (int r = 0; r < 4; ++r) {
    std::vector<cx> re(dim * dim);  // rho |e_r>
    for (std::size_t i = 0; i < dim * dim; ++i) {
      cx acc = 0;
      for (std::size_t j = 0; j < dim * dim; ++j) acc += rho(i, j) * e[r][j];
      re[i] = acc;
    }
    for (int c = 0; c < 4; ++c) {
      cx acc = 0;
      for (std::size_t i = 0; i < dim * dim; ++i) acc += std::conj(e[c][i]) * re[i];
      rq(c, r) = acc;
    }
  }

  const double defect = std::abs(rho.trace().real() - rq.trace().real());
  if (defect > 1e-9)
    throw ProjectionDefect("oracle_eof: weight outside the encoded subspace exceeds 1e-9");

  return eof_from_concurrence(concurrence(rq).concurrence);
}

std::vector<ProtocolSample> simulate_protocol_samples(const TeleportParams& p, std::size_t dim,
                                                      std::size_t samples, std::uint64_t seed,
                                                      unsigned workers) {
  check_dim(dim);
  if (samples == 0) throw OutOfRange("simulate_protocol: need at least one sample");
  if (workers == 0) workers = 1;
  const NoisyChannel ch = noisy_channel(p.alpha, decay_params(p.gamma_t));

  const FockVector c1 = fock_coherent(ch.alpha_t, dim);
  const FockVector c2 = fock_coherent(-ch.alpha_t, dim);
  const FockVector pa = fock_cat(p.alpha_prime, +1, dim);
  const FockVector ma = fock_cat(p.alpha_prime, -1, dim);
  const std::vector<cx> phi = bell_states(p.alpha_prime, p.alpha_prime, dim)[0];

  const double na2 = ch.n_alpha * ch.n_alpha;
  const double m01 = na2 * ch.beta;  // M = na2 [[1, beta], [beta, 1]]
  cx g12 = 0;                        // <c1|c2> in the truncated space
  for (std::size_t n = 0; n < dim; ++n) g12 += std::conj(c1.amp[n]) * c2.amp[n];

  // s_i = <Phi+| (|psi_a> x |c_i>) collapses to Ap*P[i] + Am*Q[i];
  // r_i = <psi_ref|c_i> to conj(Ap)*R[i] + conj(Am)*S[i]
  cx P[2] = {0, 0}, Q[2] = {0, 0}, R[2] = {0, 0}, S[2] = {0, 0};
  for (int i = 0; i < 2; ++i) {
    const FockVector& ci = (i == 0) ? c1 : c2;
    std::vector<cx> u(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      cx acc = 0;
      for (std::size_t k = 0; k < dim; ++k) acc += std::conj(phi[j * dim + k]) * ci.amp[k];
      u[j] = acc;
    }
    for (std::size_t j = 0; j < dim; ++j) {
      P[i] += pa.amp[j] * u[j];
      Q[i] += ma.amp[j] * u[j];
      R[i] += std::conj(pa.amp[j]) * ci.amp[j];
      S[i] += std::conj(ma.amp[j]) * ci.amp[j];
    }
  }

  std::vector<ProtocolSample> out(samples);
  auto run = [&](std::size_t k) {
    SampleRng rng(seed, k);
    const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
    const double ct = 1.0 - 2.0 * u1;
    const double theta = std::acos(std::clamp(ct, -1.0, 1.0));
    const double chi = 2.0 * std::numbers::pi * u2;
    const cx ap = std::cos(0.5 * theta);
    const cx am = std::exp(cx(0.0, chi)) * std::sin(0.5 * theta);

    const cx s[2] = {ap * P[0] + am * Q[0], ap * P[1] + am * Q[1]};
    const cx r[2] = {std::conj(ap) * R[0] + std::conj(am) * S[0],
                     std::conj(ap) * R[1] + std::conj(am) * S[1]};
    const cx g[2][2] = {{cx(1.0), g12}, {std::conj(g12), cx(1.0)}};

    double weight = 0, num = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double mij = (i == j) ? na2 : m01;
        const cx ss = s[i] * std::conj(s[j]);
        weight += (mij * ss * g[j][i]).real();
        num += (mij * ss * r[i] * std::conj(r[j])).real();
      }
    ProtocolSample& o = out[k];
    o.theta = theta;
    o.chi = chi;
    o.weight = weight;
    o.fidelity = (weight > 0) ? num / weight : 0.0;
    o.success = u3 < weight;
  };

  if (workers == 1) {
    for (std::size_t k = 0; k < samples; ++k) run(k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < samples; k += workers) run(k);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& ep : errs)
      if (ep) std::rethrow_exception(ep);
  }
  return out;
}

ProtocolStats simulate_protocol(const TeleportParams& p, std::size_t dim, std::size_t samples,
                                std::uint64_t seed, unsigned workers) {
  const std::vector<ProtocolSample> runs =
      simulate_protocol_samples(p, dim, samples, seed, workers);
  ProtocolStats st;
  st.samples = runs.size();
  const double n = double(runs.size());
  double hits = 0, wsum = 0, w2 = 0, fsum = 0, f2 = 0;
  st.fidelity_min = runs.front().fidelity;
  st.fidelity_max = runs.front().fidelity;
  for (const ProtocolSample& s : runs) {
    hits += s.success ? 1.0 : 0.0;
    wsum += s.weight;
    w2 += s.weight * s.weight;
    fsum += s.fidelity;
    f2 += s.fidelity * s.fidelity;
    st.fidelity_min = std::min(st.fidelity_min, s.fidelity);
    st.fidelity_max = std::max(st.fidelity_max, s.fidelity);
  }
  st.success_rate = hits / n;
  st.rate_se = std::sqrt(std::max(st.success_rate * (1.0 - st.success_rate), 0.0) / n);
  st.weight_mean = wsum / n;
  st.weight_se = std::sqrt(std::max(w2 / n - st.weight_mean * st.weight_mean, 0.0) / n);
  st.fidelity_mean = fsum / n;
  st.fidelity_se = std::sqrt(std::max(f2 / n - st.fidelity_mean * st.fidelity_mean, 0.0) / n);
  return st;
}

}  // namespace ecs
