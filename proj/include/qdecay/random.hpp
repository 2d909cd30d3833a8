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

// Seeded generators for random states and channels.

#include <cmath>
#include <numbers>
#include <random>

#include "qdecay/dynamics.hpp"
#include "qdecay/entanglement.hpp"

namespace qdecay {

class StateSampler {
public:
    explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& engine() { return rng_; }

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    cplx gaussian_complex() {
        std::normal_distribution<double> n(0.0, 1.0);
        const double re = n(rng_);
        const double im = n(rng_);
        return {re, im};
    }

    template <std::size_t N>
    Mat<N> ginibre() {
        Mat<N> g;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) g(i, j) = gaussian_complex();
        return g;
    }

    template <std::size_t N>
    Mat<N> hermitian() {
        const Mat<N> g = ginibre<N>();
        return (g + g.adjoint()) * cplx(0.5);
    }

    /// Random full-rank density matrix G G^H / tr.
    template <std::size_t N>
    Mat<N> density() {
        const Mat<N> g = ginibre<N>();
        Mat<N> r = g * g.adjoint();
        r *= cplx(1.0 / r.trace().real());
        return r;
    }

    TwoQubitState two_qubit_state() { return TwoQubitState(density<4>()); }

    PureState2Q pure_state() {
        return PureState2Q::normalized(gaussian_complex(), gaussian_complex(), gaussian_complex(),
                                       gaussian_complex());
    }

    cplx amplitude(double modulus) {
        const double phase = uniform(0.0, 2.0 * std::numbers::pi);
        return std::polar(modulus, phase);
    }

    ChannelPair channel_pair() { return ChannelPair(amplitude(uniform()), amplitude(uniform())); }

    /// Random NOE state from a 3x3 Ginibre density block on {eg, ge, gg}.
    NOEMixedState noe_state() {
        const Mat<3> r = density<3>();
        const double b = r(0, 0).real();
        const double c = r(1, 1).real();
        return NOEMixedState::make(b, c, 1.0 - b - c, r(0, 1), r(0, 2), r(1, 2));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace qdecay
