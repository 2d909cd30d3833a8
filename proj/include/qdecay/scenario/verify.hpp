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
 * Randomized invariant suites over every module, run from `mode = verify`.
 * Each suite records the largest residual seen against its tolerance.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qdecay/decay.hpp"
#include "qdecay/dynamics.hpp"
#include "qdecay/entanglement.hpp"
#include "qdecay/nonmarkov.hpp"
#include "qdecay/random.hpp"
#include "qdecay/scenario/config.hpp"
#include "qdecay/scenario/csv.hpp"

namespace qdecay::scenario {

struct SuiteResult {
    std::string name;
    std::string module;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::size_t cases = 0;
    std::string error;  ///< set when the suite threw

    bool passed() const { return error.empty() && max_residual <= tolerance; }
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;

    bool passed() const {
        return std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.passed(); });
    }
};

inline constexpr std::array<std::string_view, 2> kInjectableFaults{"dynamics", "entanglement"};

namespace detail {

template <class F>
SuiteResult run_suite(std::string name, std::string module, double tol, F&& body) {
    SuiteResult r{std::move(name), std::move(module), 0.0, tol, 0, {}};
    try {
        body(r);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

inline void track(SuiteResult& r, double residual) {
    r.max_residual = std::max(r.max_residual, residual);
    ++r.cases;
}

}  // namespace detail

/**
 * Runs all suites with the given seed. `fault` names a module whose
 * computed values are deliberately corrupted (test hook); empty for none.
 */
inline VerifyReport run_verify(std::uint64_t seed, std::string_view fault = {}) {
    if (!fault.empty() &&
        std::find(kInjectableFaults.begin(), kInjectableFaults.end(), fault) == kInjectableFaults.end())
        throw config_error("unknown fault target '" + std::string(fault) + "'");
    const bool corrupt_dynamics = fault == "dynamics";
    const bool corrupt_entanglement = fault == "entanglement";

    VerifyReport rep;
    rep.seed = seed;
    StateSampler rng(seed);

    rep.suites.push_back(detail::run_suite("eig_reconstruction", "qmath", 1e-10, [&](SuiteResult& r) {
        for (int i = 0; i < 200; ++i) {
            const Mat4 h = rng.hermitian<4>();
            const auto es = eig_hermitian(h);
            const Mat4 back = spectral_map(es, [](double x) { return x; });
            detail::track(r, max_abs_diff(back, h));
            detail::track(r, max_abs_diff(es.vectors.adjoint() * es.vectors, Mat4::identity()));
        }
    }));

    rep.suites.push_back(detail::run_suite("trace_norm_triangle", "qmath", 1e-9, [&](SuiteResult& r) {
        for (int i = 0; i < 200; ++i) {
            const Mat4 a = rng.hermitian<4>();
            const Mat4 b = rng.hermitian<4>();
            const double lhs = trace_norm(HermitianMat<4>(a + b));
            const double rhs = trace_norm(HermitianMat<4>(a)) + trace_norm(HermitianMat<4>(b));
            detail::track(r, std::max(0.0, lhs - rhs));
        }
    }));

    rep.suites.push_back(detail::run_suite("volterra_vs_analytic", "decay", 1e-6, [&](SuiteResult& r) {
        const auto grid = TimeGrid::make(10.0, 10000);
        for (double lambda : {0.01, 0.1, 1.0, 5.0})
            for (double delta : {0.0, 0.5, 2.0}) {
                const auto p = ReservoirParams::make(lambda, delta);
                const auto num = h_volterra(correlation_lorentzian(p), grid, {.self_check = false});
                double err = 0.0;
                for (std::size_t k = 0; k < grid.size(); ++k)
                    err = std::max(err, std::abs(num.h[k] - h_analytic(p, grid.time(k))));
                detail::track(r, err);
            }
    }));

    rep.suites.push_back(detail::run_suite("evolve_vs_kraus", "dynamics", 1e-12, [&](SuiteResult& r) {
        for (int i = 0; i < 1000; ++i) {
            const auto rho = rng.two_qubit_state();
            const auto ch = rng.channel_pair();
            Mat4 direct = evolve(rho, ch).rho();
            if (corrupt_dynamics && i == 0) direct(eg, ge) += 1e-6;
            detail::track(r, max_abs_diff(direct, kraus_oracle(rho, ch).rho()));
        }
    }));

    rep.suites.push_back(detail::run_suite("evolve_composition", "dynamics", 1e-12, [&](SuiteResult& r) {
        for (int i = 0; i < 200; ++i) {
            const auto rho = rng.two_qubit_state();
            const auto ch = rng.channel_pair();
            const auto two_step = evolve(evolve(rho, ChannelPair(ch.ha(), 1.0)), ChannelPair(1.0, ch.hb()));
            detail::track(r, max_abs_diff(two_step.rho(), evolve(rho, ch).rho()));
        }
    }));

    rep.suites.push_back(detail::run_suite("pure_concurrence", "entanglement", 1e-10, [&](SuiteResult& r) {
        for (int i = 0; i < 1000; ++i) {
            const auto psi = rng.pure_state();
            double c = concurrence(pure_to_state(psi));
            if (corrupt_entanglement && i == 0) c += 1e-3;
            detail::track(r, std::abs(c - psi.concurrence()));
        }
    }));

    rep.suites.push_back(detail::run_suite("law_one_sided", "entanglement", 1e-9, [&](SuiteResult& r) {
        for (int i = 0; i < 300; ++i) {
            const auto psi = rng.pure_state();
            for (int k = 0; k <= 10; ++k) {
                const cplx h = rng.amplitude(0.1 * k);
                const double direct = concurrence(evolve(pure_to_state(psi), ChannelPair::one_sided(h)));
                detail::track(r, std::abs(direct - law_one_sided(psi.concurrence(), h)));
            }
        }
    }));

    rep.suites.push_back(detail::run_suite("law_two_sided_pure", "entanglement", 1e-8, [&](SuiteResult& r) {
        for (int i = 0; i < 200; ++i) {
            const auto psi = rng.pure_state();
            if (psi.concurrence() <= 1e-6) continue;
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) {
                    const ChannelPair ch(rng.amplitude(0.25 * a), rng.amplitude(0.25 * b));
                    detail::track(r, law_two_sided_pure(psi, ch).residual);
                }
        }
    }));

    rep.suites.push_back(detail::run_suite("law_noe_product", "entanglement", 1e-9, [&](SuiteResult& r) {
        for (int i = 0; i < 300; ++i) {
            const auto s = rng.noe_state();
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) {
                    const ChannelPair ch(rng.amplitude(0.25 * a), rng.amplitude(0.25 * b));
                    const double direct = concurrence(evolve(s.embed(), ch));
                    detail::track(r, std::abs(direct - law_two_sided_noe(s, ch)));
                }
        }
    }));

    rep.suites.push_back(detail::run_suite("trace_distance_anchor", "nonmarkov", 1e-10, [&](SuiteResult& r) {
        const auto grid = TimeGrid::make(50.0, 5000);
        for (double lambda : {0.01, 0.1, 1.0, 5.0})
            for (double delta : {0.0, 0.5, 2.0}) {
                const auto h = h_analytic_series(ReservoirParams::make(lambda, delta), grid);
                const auto d = trace_distance_series(optimal_pair(), h);
                for (std::size_t k = 0; k < h.size(); ++k) detail::track(r, std::abs(d[k] - std::abs(h[k])));
            }
    }));

    rep.suites.push_back(detail::run_suite("markovian_N_zero", "nonmarkov", 1e-9, [&](SuiteResult& r) {
        for (double lambda : {2.0, 3.0, 5.0, 10.0}) {
            const auto rep_n = measure_N(ReservoirParams::make(lambda, 0.0), TimeGrid::make(20.0, 20000));
            detail::track(r, rep_n.n);
            detail::track(r, rep_n.n_rise);
        }
    }));

    return rep;
}

/// One `key=value` line per suite plus a summary line.
inline void print_verify_report(std::ostream& os, const VerifyReport& rep) {
    for (const auto& s : rep.suites) {
        os << "suite=" << s.name << " module=" << s.module << " status=" << (s.passed() ? "PASS" : "FAIL")
           << " cases=" << s.cases << " max_residual=" << format_double(s.max_residual)
           << " tolerance=" << format_double(s.tolerance) << " seed=" << rep.seed;
        if (!s.error.empty()) os << " error=\"" << s.error << '"';
        os << '\n';
    }
    const auto n_pass = std::count_if(rep.suites.begin(), rep.suites.end(), [](const auto& s) { return s.passed(); });
    os << "verify=" << (rep.passed() ? "PASS" : "FAIL") << " passed=" << n_pass << " total=" << rep.suites.size()
       << '\n';
}

}  // namespace qdecay::scenario
