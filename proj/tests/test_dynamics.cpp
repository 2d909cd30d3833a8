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

#include <gtest/gtest.h>

#include <cmath>

#include "qdecay/dynamics.hpp"
#include "qdecay/random.hpp"

using namespace qdecay;

namespace {

TwoQubitState basis_state(std::size_t i) {
    Mat4 m;
    m(i, i) = 1.0;
    return TwoQubitState(m);
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST(Evolve, IdentityChannel) {
    StateSampler rng(1);
    for (int i = 0; i < 50; ++i) {
        const auto rho = rng.two_qubit_state();
        EXPECT_LT(max_abs_diff(evolve(rho, ChannelPair(1.0, 1.0)).rho(), rho.rho()), 1e-15);
    }
}

TEST(Evolve, VacuumIsFixed) {
    StateSampler rng(2);
    const auto vac = basis_state(gg);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(evolve(vac, rng.channel_pair()).rho(), vac.rho());
}

TEST(Evolve, DoublyExcitedOneSided) {
    const cplx h(0.3, 0.4);
    const auto out = evolve(basis_state(ee), ChannelPair::one_sided(h));
    EXPECT_NEAR(out(ee, ee).real(), 0.25, 1e-15);
    EXPECT_NEAR(out(ge, ge).real(), 0.75, 1e-15);
    Mat4 expected;
    expected(ee, ee) = 0.25;
    expected(ge, ge) = 0.75;
    EXPECT_LT(max_abs_diff(out.rho(), expected), 1e-15);
}

TEST(Evolve, BellPhiHandEvaluated) {
    // |h|^2 = 1/2 with a phase, both sides.
    const cplx h = std::polar(kInvSqrt2, 0.7);
    const auto phi = pure_to_state(PureState2Q(kInvSqrt2, 0.0, 0.0, kInvSqrt2));
    const auto out = evolve(phi, ChannelPair(h, h));
    EXPECT_LT(std::abs(out(ee, gg) - 0.5 * h * h), 1e-15);
    EXPECT_NEAR(out(eg, eg).real(), 0.125, 1e-15);
    EXPECT_NEAR(out(ge, ge).real(), 0.125, 1e-15);
    EXPECT_NEAR(out(ee, ee).real(), 0.125, 1e-15);
    EXPECT_NEAR(out(gg, gg).real(), 0.625, 1e-15);
    EXPECT_LT(max_abs_diff(out.rho(), kraus_oracle(phi, ChannelPair(h, h)).rho()), 1e-15);
}

TEST(Evolve, MatchesKrausOracle) {
    StateSampler rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto rho = rng.two_qubit_state();
        const auto ch = rng.channel_pair();
        const auto direct = evolve(rho, ch);
        ASSERT_LT(max_abs_diff(direct.rho(), kraus_oracle(rho, ch).rho()), 1e-12) << "case " << i;
        ASSERT_LT(std::abs(direct.rho().trace() - 1.0), 1e-12);
        ASSERT_GE(eig_hermitian(direct.rho()).values[3], -1e-10);
    }
}

TEST(Evolve, OneSidedStepsCompose) {
    StateSampler rng(4);
    for (int i = 0; i < 300; ++i) {
        const auto rho = rng.two_qubit_state();
        const auto ch = rng.channel_pair();
        const auto staged = evolve(evolve(rho, ChannelPair(ch.ha(), 1.0)), ChannelPair(1.0, ch.hb()));
        EXPECT_LT(max_abs_diff(staged.rho(), evolve(rho, ch).rho()), 1e-12);
    }
}

TEST(KrausOracle, FullDecayRelaxesQubitA) {
    StateSampler rng(5);
    const auto out = kraus_oracle(rng.two_qubit_state(), ChannelPair(0.0, 1.0));
    EXPECT_LT(max_abs_diff(out.reduced_a(), Mat2::diagonal({0.0, 1.0})), 1e-15);
}

TEST(KrausOracle, IdentityChannel) {
    StateSampler rng(6);
    const auto rho = rng.two_qubit_state();
    EXPECT_LT(max_abs_diff(kraus_oracle(rho, ChannelPair(1.0, 1.0)).rho(), rho.rho()), 1e-15);
}

TEST(PureToState, Projectors) {
    const auto e = pure_to_state(PureState2Q(1.0, 0.0, 0.0, 0.0));
    EXPECT_EQ(e.rho(), Mat4::diagonal({1.0, 0.0, 0.0, 0.0}));

    const auto psi = pure_to_state(PureState2Q(0.0, kInvSqrt2, kInvSqrt2, 0.0));
    EXPECT_NEAR(psi(eg, eg).real(), 0.5, 1e-15);
    EXPECT_NEAR(psi(ge, ge).real(), 0.5, 1e-15);
    EXPECT_NEAR(psi(eg, ge).real(), 0.5, 1e-15);
    EXPECT_EQ(psi(ee, ee), cplx(0.0));

    StateSampler rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto r = pure_to_state(rng.pure_state());
        EXPECT_NEAR((r.rho() * r.rho()).trace().real(), 1.0, 1e-12);
    }
}

TEST(PureState2Q, RejectsUnnormalized) {
    EXPECT_THROW(PureState2Q(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(PureState2Q::normalized(0.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(ChannelPair, RejectsNonContractive) {
    EXPECT_THROW(ChannelPair(1.01, 1.0), std::invalid_argument);
    EXPECT_THROW(ChannelPair(1.0, cplx(0.0, -1.1)), std::invalid_argument);
    EXPECT_NO_THROW(ChannelPair(1.0 + 1e-10, 0.0));
}

TEST(TwoQubitState, RejectsInvalidMatrices) {
    Mat4 m = Mat4::diagonal({0.5, 0.5, 0.5, 0.0});
    EXPECT_THROW(TwoQubitState{m}, non_physical_error);  // trace 1.5
    m = Mat4::diagonal({1.2, -0.2, 0.0, 0.0});
    EXPECT_THROW(TwoQubitState{m}, non_physical_error);  // not PSD
    m = Mat4::diagonal({1.0, 0.0, 0.0, 0.0});
    m(0, 1) = 0.1;
    EXPECT_THROW(TwoQubitState{m}, non_physical_error);  // not Hermitian
}

TEST(ChannelPair, UnitModulusIsLossless) {
    for (double phase : {0.3, 1.1, 2.9, -0.7}) EXPECT_EQ(ChannelPair(std::polar(1.0, phase), 0.5).loss_a(), 0.0);
    EXPECT_DOUBLE_EQ(ChannelPair(1.0, 0.5).loss_b(), 0.75);
    EXPECT_EQ(ChannelPair(1.0 + 1e-10, 0.0).loss_a(), 0.0);
}
