#pragma once
// Independent concurrence route for cross-checking the spectral implementation.
// Instead of hermitian eigendecomposition + psd square roots, extract the four
// Wootters numbers as roots of the characteristic polynomial of rho * rho_tilde
// (Faddeev-LeVerrier coefficients, then root extraction with noise-floor
// deflation of the structurally zero roots).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "ecs/linalg.hpp"

namespace qo {

using cx = std::complex<double>;

// coefficients of x^4 + c[0] x^3 + c[1] x^2 + c[2] x + c[3]
inline std::array<cx, 4> char_poly(const ecs::Matrix& a) {
    const std::size_t n = 4;
    ecs::Matrix m = a;
    std::array<cx, 4> c{};
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            ecs::Matrix shifted = m;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[k - 1];
            m = a * shifted;
        }
        cx tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        c[k] = -tr / static_cast<double>(k + 1);
    }
    return c;
}

// Durand-Kerner for a monic polynomial of degree m with coefficients c[0..m-1]
// (highest first). Fine for simple roots; clustered roots lose digits, which
// is why rank-deficient cases are deflated before ever reaching here.
inline void durand_kerner(const cx* c, int m, cx* r) {
    auto eval = [&](cx x) {
        cx v = 1.0;
        for (int k = 0; k < m; ++k) v = v * x + c[k];
        return v;
    };
    const cx seed(0.4, 0.9);
    cx p = 1.0;
    for (int i = 0; i < m; ++i) {
        p *= seed;
        r[i] = p;
    }
    for (int it = 0; it < 500; ++it) {
        double moved = 0.0;
        for (int i = 0; i < m; ++i) {
            cx denom = 1.0;
            for (int j = 0; j < m; ++j)
                if (j != i) denom *= r[i] - r[j];
            const cx delta = eval(r[i]) / denom;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-16) break;
    }
}

// Roots of x^4 + c[0] x^3 + ... + c[3] for a matrix known to be similar to a
// real nonnegative diagonal (a density-matrix product). A trailing coefficient
// below 1e-12 * scale^k is round-off shadowing an exactly-zero root: dividing
// it out, rather than solving the perturbed quartic, keeps the surviving small
// roots at full precision (the perturbation shifts a genuine root x by
// |noise| / |p'(x)|, which blows up as x -> 0).
inline std::array<cx, 4> spectrum_roots(const std::array<cx, 4>& c) {
    std::array<cx, 4> r{};
    const double s = std::abs(c[0]);  // ~ sum of roots once deflation applies
    if (s < 1e-12) return r;          // whole spectrum at the noise floor

    int m = 4;
    double thr = 1e-12;
    for (int k = 0; k < 4; ++k) thr *= s;  // 1e-12 * s^4
    while (m > 1 && std::abs(c[m - 1]) <= thr) {
        --m;
        thr /= s;
    }

    if (m == 1) {
        r[0] = -c[0];
    } else if (m == 2) {
        cx sq = std::sqrt(c[0] * c[0] - 4.0 * c[1]);
        if (std::real(std::conj(-c[0]) * sq) < 0.0) sq = -sq;  // avoid cancellation
        const cx big = 0.5 * (-c[0] + sq);
        r[0] = big;
        r[1] = c[1] / big;  // product of the pair = c[1]
    } else {
        durand_kerner(c.data(), m, r.data());
    }
    return r;
}

// Wootters numbers via the characteristic polynomial of rho * rho_tilde.
// rho must be a 4x4 density matrix in the same basis convention as
// ecs::concurrence (first qubit state |1> listed before |0>).
inline std::array<double, 4> wootters_by_charpoly(const ecs::Matrix& rho) {
    ecs::Matrix h(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            h(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));

    // sigma_y (x) sigma_y has a single anti-diagonal; in the |1>,|0> ordering
    // the pattern over basis |11>,|10>,|01>,|00> is (-1, +1, +1, -1).
    const std::array<double, 4> sgn{-1.0, 1.0, 1.0, -1.0};
    ecs::Matrix tilde(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            tilde(i, j) = sgn[i] * sgn[j] * std::conj(h(3 - i, 3 - j));

    const auto roots4 = spectrum_roots(char_poly(h * tilde));

    std::array<double, 4> x{};
    for (int i = 0; i < 4; ++i) x[i] = std::max(0.0, roots4[i].real());
    std::sort(x.begin(), x.end(), std::greater<double>());

    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(x[i]);
    // same junk-root rule as the spectral route, so both count the same number
    // of genuine Wootters numbers
    if (lam[0] > 0.0)
        for (int i = 1; i < 4; ++i)
            if (lam[i] < 1e-6 * lam[0]) lam[i] = 0.0;
    return lam;
}

inline double concurrence_by_charpoly(const ecs::Matrix& rho) {
    const auto lam = wootters_by_charpoly(rho);
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

}  // namespace qo
