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
 * Single-qubit trace-distance dynamics and the trace-distance
 * non-Markovianity measure N = \int_{sigma > 0} sigma(t) dt.
 *
 * The maximization over initial pairs is replaced by the pair (|+>, |->):
 * under amplitude decay their difference stays purely off-diagonal with
 * entry h, so D(t) = |h(t)|, the largest value any pair can reach.
 */

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdecay/decay.hpp"
#include "qdecay/dynamics.hpp"
#include "qdecay/qmath.hpp"

namespace qdecay {

/// 2x2 density matrix in {|e>, |g>}.
class QubitState {
public:
    explicit QubitState(const Mat2& rho) : rho_(rho) {
        detail::check_density(rho, "qubit state");
        rho_ = HermitianMat<2>(rho).mat();
    }

    static QubitState excited() { return QubitState(Mat2::diagonal({1.0, 0.0})); }
    static QubitState ground() { return QubitState(Mat2::diagonal({0.0, 1.0})); }
    /// (|e> + |g>)/sqrt2
    static QubitState plus() { return QubitState(half_coherent(1.0)); }
    /// (|e> - |g>)/sqrt2
    static QubitState minus() { return QubitState(half_coherent(-1.0)); }

    const Mat2& rho() const { return rho_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return rho_(i, j); }

private:
    static Mat2 half_coherent(double sign) {
        Mat2 m;
        m(0, 0) = 0.5;
        m(1, 1) = 0.5;
        m(0, 1) = 0.5 * sign;
        m(1, 0) = 0.5 * sign;
        return m;
    }

    Mat2 rho_;
};

using QubitPair = std::pair<QubitState, QubitState>;

inline QubitPair optimal_pair() { return {QubitState::plus(), QubitState::minus()}; }

/// rho_ee -> rho_ee |h|^2, rho_eg -> rho_eg h, rho_gg -> 1 - rho_ee |h|^2.
inline QubitState evolve_qubit(const QubitState& rho0, cplx h) {
    if (std::abs(h) > 1.0 + kContractTol)
        throw std::invalid_argument("evolve_qubit requires |h| <= 1");
    Mat2 r;
    r(0, 0) = rho0(0, 0).real() * std::norm(h);
    r(0, 1) = rho0(0, 1) * h;
    r(1, 0) = std::conj(r(0, 1));
    r(1, 1) = 1.0 - r(0, 0).real();
    return QubitState(r);
}

/// D = ||r1 - r2||_1 / 2.
inline double trace_distance(const QubitState& r1, const QubitState& r2) {
    return 0.5 * trace_norm(HermitianMat<2>(r1.rho() - r2.rho()));
}

inline std::vector<double> trace_distance_series(const QubitPair& pair, std::span<const cplx> h) {
    std::vector<double> d(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        d[k] = trace_distance(evolve_qubit(pair.first, h[k]), evolve_qubit(pair.second, h[k]));
    return d;
}

/// dD/dt by central differences, one-sided at both ends.
inline std::vector<double> derivative_series(std::span<const double> d, double dt) {
    if (d.size() < 3) throw std::invalid_argument("sigma needs at least 3 grid points");
    if (!(dt > 0.0)) throw std::invalid_argument("sigma needs dt > 0");
    const std::size_t n = d.size();
    std::vector<double> s(n);
    s[0] = (d[1] - d[0]) / dt;
    s[n - 1] = (d[n - 1] - d[n - 2]) / dt;
    for (std::size_t k = 1; k + 1 < n; ++k) s[k] = (d[k + 1] - d[k - 1]) / (2.0 * dt);
    return s;
}

/// sigma(t) = dD/dt for the pair evolved with the sampled amplitudes h.
inline std::vector<double> sigma_series(const QubitPair& pair, std::span<const cplx> h, double dt) {
    if (h.size() < 3) throw std::invalid_argument("sigma needs at least 3 grid points");
    const auto d = trace_distance_series(pair, h);
    return derivative_series(d, dt);
}

struct NonMarkovReport {
    double n = 0.0;       ///< trapezoid of max(sigma, 0)
    double n_rise = 0.0;  ///< sum of sampled increases of D
    std::vector<std::pair<double, double>> positive_intervals;
    std::vector<double> d_series;
    std::vector<double> sigma;
};

inline constexpr double kRiseTol = 1e-12;

namespace detail {

// \int max(s, 0) of the piecewise-linear interpolant of s; intervals where s
// changes sign are split at the crossing.
inline double positive_part_trapezoid(std::span<const double> s, double dt) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        const double a = s[k];
        const double b = s[k + 1];
        if (a >= 0.0 && b >= 0.0) {
            acc += 0.5 * (a + b) * dt;
        } else if (a > 0.0 || b > 0.0) {
            const double pos = std::max(a, b);
            const double frac = pos / (std::abs(a) + std::abs(b));
            acc += 0.5 * pos * frac * dt;
        }
    }
    return acc;
}

}  // namespace detail

/// Measure from a sampled amplitude series on `grid`.
inline NonMarkovReport measure_N(std::span<const cplx> h, const TimeGrid& grid) {
    grid.validate();
    if (h.size() != grid.size()) throw std::invalid_argument("h series does not match the grid");
    NonMarkovReport rep;
    const double dt = grid.dt();
    rep.d_series = trace_distance_series(optimal_pair(), h);
    rep.sigma = derivative_series(rep.d_series, dt);
    rep.n = detail::positive_part_trapezoid(rep.sigma, dt);

    bool rising = false;
    for (std::size_t k = 0; k + 1 < rep.d_series.size(); ++k) {
        const double inc = rep.d_series[k + 1] - rep.d_series[k];
        if (inc > kRiseTol) {
            rep.n_rise += inc;
            if (!rising) rep.positive_intervals.emplace_back(grid.time(k), grid.time(k + 1));
            rep.positive_intervals.back().second = grid.time(k + 1);
            rising = true;
        } else {
            rising = false;
        }
    }
    if (rep.positive_intervals.empty()) rep.n = 0.0;
    return rep;
}

/// Measure for a Lorentzian reservoir using the closed-form h.
inline NonMarkovReport measure_N(const ReservoirParams& p, const TimeGrid& grid) {
    const auto h = h_analytic_series(p, grid);
    return measure_N(h, grid);
}

}  // namespace qdecay
