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
 * Two qubits, each decaying into its own vacuum reservoir.
 *
 * States live in the product basis {|ee>, |eg>, |ge>, |gg>} (qubit A first).
 * A channel pair (hA, hB) holds the two decay amplitudes at a common time;
 * hB = 1 is the one-sided case.
 */

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qdecay/qmath.hpp"

namespace qdecay {

/// Basis indices; the order is part of the public contract.
enum Basis : std::size_t { ee = 0, eg = 1, ge = 2, gg = 3 };

inline constexpr double kStateTol = 1e-12;
inline constexpr double kContractTol = 1e-9;
/// 1 - |h|^2 below this is round-off from forming |h| ~ 1 and is read as zero.
inline constexpr double kLosslessTol = 1e-15;

/// Raised by evolve when its own output breaks a density-matrix invariant.
class map_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Normalized pure state c1|ee> + c2|eg> + c3|ge> + c4|gg>.
class PureState2Q {
public:
    PureState2Q(cplx c1, cplx c2, cplx c3, cplx c4) : c_{c1, c2, c3, c4} {
        double n = 0.0;
        for (const auto& z : c_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("pure state amplitudes must be finite");
            n += std::norm(z);
        }
        if (std::abs(n - 1.0) > kStateTol) {
            std::ostringstream os;
            os << "pure state is not normalized: sum |c_i|^2 = " << n;
            throw std::invalid_argument(os.str());
        }
    }

    /// Normalizes arbitrary nonzero amplitudes.
    static PureState2Q normalized(cplx c1, cplx c2, cplx c3, cplx c4) {
        const double n = std::sqrt(std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4));
        if (!(n > 0.0)) throw std::invalid_argument("cannot normalize the zero vector");
        return PureState2Q(c1 / n, c2 / n, c3 / n, c4 / n);
    }

    const cplx& operator[](std::size_t i) const { return c_[i]; }
    const std::array<cplx, 4>& amplitudes() const { return c_; }

    /// 2|c1 c4 - c2 c3|.
    double concurrence() const { return 2.0 * std::abs(c_[0] * c_[3] - c_[1] * c_[2]); }

private:
    std::array<cplx, 4> c_;
};

namespace detail {

template <std::size_t N>
void check_density(const Mat<N>& m, const char* what) {
    if (!m.is_finite()) throw non_physical_error(std::string(what) + ": non-finite entries");
    const double herm = hermitian_deviation(m);
    if (herm > kStateTol) {
        std::ostringstream os;
        os << what << ": not Hermitian (deviation " << herm << ")";
        throw non_physical_error(os.str());
    }
    const double tr_err = std::abs(m.trace() - 1.0);
    if (tr_err > kStateTol) {
        std::ostringstream os;
        os << what << ": trace differs from 1 by " << tr_err;
        throw non_physical_error(os.str());
    }
    const auto es = eig_hermitian(HermitianMat<N>(m));
    if (es.values[N - 1] < -kPsdClamp) {
        std::ostringstream os;
        os << what << ": not positive semidefinite (min eigenvalue " << es.values[N - 1] << ")";
        throw non_physical_error(os.str());
    }
}

}  // namespace detail

/// 4x4 density matrix; construction checks Hermiticity, unit trace and positivity.
class TwoQubitState {
public:
    explicit TwoQubitState(const Mat4& rho) : rho_(rho) {
        detail::check_density(rho, "two-qubit state");
        rho_ = HermitianMat<4>(rho).mat();
    }

    const Mat4& rho() const { return rho_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return rho_(i, j); }

    /// Trace over qubit B.
    Mat2 reduced_a() const {
        Mat2 r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                r(i, j) = rho_(2 * i, 2 * j) + rho_(2 * i + 1, 2 * j + 1);
        return r;
    }

    /// Trace over qubit A.
    Mat2 reduced_b() const {
        Mat2 r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) r(i, j) = rho_(i, j) + rho_(i + 2, j + 2);
        return r;
    }

private:
    Mat4 rho_;
};

/// Decay amplitudes of channels A and B at one instant; |h| <= 1 enforced.
class ChannelPair {
public:
    ChannelPair(cplx h_a, cplx h_b) : ha_(h_a), hb_(h_b) {
        check(h_a, "hA");
        check(h_b, "hB");
    }

    static ChannelPair one_sided(cplx h) { return ChannelPair(h, 1.0); }

    cplx ha() const { return ha_; }
    cplx hb() const { return hb_; }

    /// 1 - |h|^2, the excited population lost by each qubit.
    double loss_a() const { return loss(ha_); }
    double loss_b() const { return loss(hb_); }

private:
    static double loss(cplx h) {
        const double l = 1.0 - std::norm(h);
        return l < kLosslessTol ? 0.0 : l;
    }

    static void check(cplx h, const char* name) {
        if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
            throw std::invalid_argument(std::string(name) + " must be finite");
        if (std::abs(h) > 1.0 + kContractTol) {
            std::ostringstream os;
            os << name << " has modulus " << std::abs(h) << " > 1; the map would not be a contraction";
            throw std::invalid_argument(os.str());
        }
    }

    cplx ha_;
    cplx hb_;
};

/// rho_ij = c_i conj(c_j).
inline TwoQubitState pure_to_state(const PureState2Q& psi) {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return TwoQubitState(m);
}

/**
 * Element-wise two-qubit decay map.
 *
 * Diagonal:
 *   rho11 -> rho11 |hA|^2 |hB|^2
 *   rho22 -> |hA|^2 [rho22 + rho11 (1 - |hB|^2)]
 *   rho33 -> |hB|^2 [rho33 + rho11 (1 - |hA|^2)]
 *   rho44 -> 1 - (rho11 + rho22 + rho33)
 * Coherences:
 *   rho12 -> rho12 |hA|^2 hB         rho13 -> rho13 hA |hB|^2
 *   rho14 -> rho14 hA hB             rho23 -> rho23 hA conj(hB)
 *   rho24 -> hA [rho24 + rho13 (1 - |hB|^2)]
 *   rho34 -> hB [rho34 + rho12 (1 - |hA|^2)]
 *
 * rho23 = <eg|rho|ge> carries hA conj(hB): the bra side of qubit B is
 * excited. The lower triangle is the Hermitian conjugate.
 */
inline TwoQubitState evolve(const TwoQubitState& rho0, const ChannelPair& ch) {
    const Mat4& r = rho0.rho();
    const cplx ha = ch.ha();
    const cplx hb = ch.hb();
    const double pa = std::norm(ha);
    const double pb = std::norm(hb);

    Mat4 out;
    out(ee, ee) = r(ee, ee) * pa * pb;
    const double la = ch.loss_a();
    const double lb = ch.loss_b();
    out(eg, eg) = pa * (r(eg, eg) + r(ee, ee) * lb);
    out(ge, ge) = pb * (r(ge, ge) + r(ee, ee) * la);
    out(gg, gg) = 1.0 - (out(ee, ee) + out(eg, eg) + out(ge, ge));

    out(ee, eg) = r(ee, eg) * pa * hb;
    out(ee, ge) = r(ee, ge) * ha * pb;
    out(ee, gg) = r(ee, gg) * ha * hb;
    out(eg, ge) = r(eg, ge) * ha * std::conj(hb);
    out(eg, gg) = ha * (r(eg, gg) + r(ee, ge) * lb);
    out(ge, gg) = hb * (r(ge, gg) + r(ee, eg) * la);

    for (std::size_t i = 0; i < 4; ++i) {
        out(i, i) = out(i, i).real();
        for (std::size_t j = i + 1; j < 4; ++j) out(j, i) = std::conj(out(i, j));
    }

    try {
        return TwoQubitState(out);
    } catch (const non_physical_error& e) {
        throw map_error(std::string("evolve produced an invalid state: ") + e.what());
    }
}

/// Amplitude-decay Kraus pair {diag(h, 1), sqrt(1 - |h|^2) |g><e|}.
inline std::array<Mat2, 2> amplitude_decay_kraus(cplx h) {
    Mat2 k0;
    k0(0, 0) = h;
    k0(1, 1) = 1.0;
    Mat2 k1;
    k1(1, 0) = std::sqrt(std::max(0.0, 1.0 - std::norm(h)));
    return {k0, k1};
}

/**
 * Independent route to evolve(): sum over (Ka (x) Kb) rho (Ka (x) Kb)^H.
 */
inline TwoQubitState kraus_oracle(const TwoQubitState& rho0, const ChannelPair& ch) {
    const auto ka = amplitude_decay_kraus(ch.ha());
    const auto kb = amplitude_decay_kraus(ch.hb());
    Mat4 out;
    for (const auto& a : ka)
        for (const auto& b : kb) {
            const Mat4 k = kron(a, b);
            out += k * rho0.rho() * k.adjoint();
        }
    return TwoQubitState(out);
}

}  // namespace qdecay
