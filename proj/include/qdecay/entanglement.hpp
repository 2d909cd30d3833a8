// Copyright 2026 The qdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * Wootters concurrence and the closed-form laws relating the concurrence of
 * a decaying two-qubit state to its initial concurrence and |hA|, |hB|.
 */

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qdecay/dynamics.hpp"
#include "qdecay/qmath.hpp"

namespace qdecay {

/// Density-matrix eigenvalues below this are dropped before the square root.
inline constexpr double kRankTol = 1e-14;

/// sigma_y (x) sigma_y in the {ee, eg, ge, gg} basis.
inline Mat4 spin_flip() {
    Mat4 y;
    y(ee, gg) = -1.0;
    y(eg, ge) = 1.0;
    y(ge, eg) = 1.0;
    y(gg, ee) = -1.0;
    return y;
}

/// (sy (x) sy) conj(rho) (sy (x) sy).
inline Mat4 spin_flipped(const Mat4& rho) {
    const Mat4 y = spin_flip();
    return y * rho.conj() * y;
}

/**
 * Square roots of the eigenvalues of rho * spin_flipped(rho), descending.
 *
 * With S = sqrt(rho), these are the singular values of the complex symmetric
 * matrix T = S^T (sy (x) sy) S, read off as the non-negative eigenvalues of
 * the Hermitian dilation [[0, T], [T^H, 0]]. Working with T instead of
 * T T^H keeps zero singular values at round-off level instead of sqrt(eps).
 */
inline std::array<double, 4> wootters_lambdas(const TwoQubitState& rho) {
    // Eigenvalues at round-off level would enter S as sqrt(eps) ~ 1e-8 and
    // swamp the result; treat them as exact zeros.
    const auto rho_es = eig_hermitian(HermitianMat<4>(rho.rho()));
    const double floor = kRankTol * std::max(1.0, rho_es.values[0]);
    const Mat4 s = spectral_map(rho_es, [floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
    const Mat4 t = s.transpose() * spin_flip() * s;

    Mat<8> dilation;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            dilation(i, j + 4) = t(i, j);
            dilation(j + 4, i) = std::conj(t(i, j));
        }
    const auto es = eig_hermitian(HermitianMat<8>(dilation));
    return {std::max(0.0, es.values[0]), std::max(0.0, es.values[1]),
            std::max(0.0, es.values[2]), std::max(0.0, es.values[3])};
}

/// max{0, l1 - l2 - l3 - l4}, clamped to [0, 1].
inline double concurrence(const TwoQubitState& rho) {
    const auto l = wootters_lambdas(rho);
    return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

/// One-sided law: C(t) = C(0) |h(t)|.
inline double law_one_sided(double c0, cplx h) {
    if (!(c0 >= 0.0 && c0 <= 1.0 + kStateTol))
        throw std::invalid_argument("initial concurrence must lie in [0, 1]");
    return c0 * std::abs(h);
}

struct LawReport {
    double t = 0.0;
    double c_direct = 0.0;  ///< Wootters concurrence of the evolved state
    double c_law = 0.0;     ///< closed-form prediction
    double q = 0.0;
    double x = 1.0;
    double residual = 0.0;  ///< |c_direct - c_law|
    bool applicable = true;
};

/**
 * Two-sided law for a pure initial state:
 *
 *   C(t) = max{0, Q},  Q = C(0) |hA| |hB| X,
 *   X = 1 - (|c1|^2 / |c2 c3 - c1 c4|) sqrt((1 - |hA|^2)(1 - |hB|^2)).
 *
 * When C(0) = 0 the ratio is undefined; the report is then marked
 * inapplicable, with Q = 0, X = 1 and c_law = c_direct.
 */
inline LawReport law_two_sided_pure(const PureState2Q& psi, const ChannelPair& ch, double t = 0.0) {
    LawReport r;
    r.t = t;
    r.c_direct = concurrence(evolve(pure_to_state(psi), ch));

    const double det = std::abs(psi[1] * psi[2] - psi[0] * psi[3]);
    if (det < 1e-15) {
        r.applicable = false;
        r.q = 0.0;
        r.x = 1.0;
        r.c_law = r.c_direct;
        r.residual = 0.0;
        return r;
    }
    const double c0 = 2.0 * det;
    const double abs_a = std::abs(ch.ha());
    const double abs_b = std::abs(ch.hb());
    const double xi = ch.loss_a() * ch.loss_b();
    r.x = 1.0 - std::norm(psi[0]) / det * std::sqrt(xi);
    r.q = c0 * abs_a * abs_b * r.x;
    r.c_law = std::max(0.0, r.q);
    r.residual = std::abs(r.c_direct - r.c_law);
    return r;
}

/**
 * Mixed state with at most one excitation:
 *
 *   [0  0   0   0]
 *   [0  b   z   e]
 *   [0  z*  c   f]
 *   [0  e*  f*  d]
 *
 * (d here is a population, unrelated to the decay-rate root in decay.hpp.)
 */
struct NOEMixedState {
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;
    cplx z = 0.0;
    cplx e = 0.0;
    cplx f = 0.0;

    /// Builds and validates; throws if b + c + d != 1 or the matrix is not PSD.
    static NOEMixedState make(double b, double c, double d, cplx z, cplx e, cplx f) {
        NOEMixedState s{b, c, d, z, e, f};
        (void)s.embed();
        return s;
    }

    Mat4 matrix() const {
        Mat4 m;
        m(eg, eg) = b;
        m(ge, ge) = c;
        m(gg, gg) = d;
        m(eg, ge) = z;
        m(ge, eg) = std::conj(z);
        m(eg, gg) = e;
        m(gg, eg) = std::conj(e);
        m(ge, gg) = f;
        m(gg, ge) = std::conj(f);
        return m;
    }

    TwoQubitState embed() const {
        if (std::abs(b + c + d - 1.0) > kStateTol)
            throw std::invalid_argument("NOE populations must satisfy b + c + d = 1");
        return TwoQubitState(matrix());
    }

    /// max{0, sqrt(bc) + |z| - |sqrt(bc) - |z||}; equals 2|z| on valid states.
    double initial_concurrence() const {
        const double root = std::sqrt(std::max(0.0, b * c));
        const double az = std::abs(z);
        return std::max(0.0, root + az - std::abs(root - az));
    }
};

/// Two-sided product law for NOE states: C(t) = C(0) |hA| |hB|.
inline double law_two_sided_noe(const NOEMixedState& s, const ChannelPair& ch) {
    return s.initial_concurrence() * std::abs(ch.ha()) * std::abs(ch.hb());
}

inline constexpr double kZeroConcurrence = 1e-12;

struct ZeroInterval {
    double t_start = 0.0;
    double t_end = 0.0;
};

struct EsdReport {
    std::vector<ZeroInterval> dead_intervals;  ///< runs longer than two grid steps
    std::vector<double> discrete_zeros;        ///< isolated touch points (run midpoints)
    std::vector<double> revivals;              ///< first live sample after a dead interval

    bool has_sudden_death() const { return !dead_intervals.empty(); }
};

/**
 * Classify the zeros of a uniformly sampled concurrence series (sample k at
 * t = k * dt). Maximal runs with C < 1e-12 spanning more than 2 dt are dead
 * intervals; shorter runs are discrete zeros.
 */
inline EsdReport detect_esd(std::span<const double> c, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("detect_esd needs dt > 0");
    EsdReport rep;
    std::size_t k = 0;
    while (k < c.size()) {
        if (c[k] >= kZeroConcurrence) {
            ++k;
            continue;
        }
        const std::size_t first = k;
        while (k < c.size() && c[k] < kZeroConcurrence) ++k;
        const std::size_t last = k - 1;
        const double t0 = static_cast<double>(first) * dt;
        const double t1 = static_cast<double>(last) * dt;
        if (t1 - t0 > 2.0 * dt * (1.0 + 1e-12)) {
            rep.dead_intervals.push_back({t0, t1});
            if (k < c.size()) rep.revivals.push_back(static_cast<double>(k) * dt);
        } else {
            rep.discrete_zeros.push_back(0.5 * (t0 + t1));
        }
    }
    return rep;
}

}  // namespace qdecay
