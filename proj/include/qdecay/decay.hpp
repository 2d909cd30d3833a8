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
 * Excited-state decay amplitude h(t) of a qubit coupled to a zero-temperature
 * bosonic reservoir.
 *
 * h obeys the memory-kernel equation
 *
 *     dh/dt = -\int_0^t f(t - s) h(s) ds,   h(0) = 1,
 *
 * where f is the reservoir correlation function. For a detuned Lorentzian
 * spectral density f(tau) = (gamma0 lambda / 2) exp(-(lambda - i Delta) tau)
 * and h has a closed form (h_analytic). h_volterra solves the equation on a
 * uniform grid for any kernel that can be evaluated pointwise.
 *
 * Times are in units of 1/gamma0 and rates in units of gamma0.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdecay/qmath.hpp"

namespace qdecay {

/// Lorentzian reservoir: spectral width lambda, detuning delta = omega0 - omega_c.
struct ReservoirParams {
    double lambda = 1.0;
    double delta = 0.0;
    double gamma0 = 1.0;

    static ReservoirParams make(double lambda, double delta, double gamma0 = 1.0) {
        ReservoirParams p{lambda, delta, gamma0};
        p.validate();
        return p;
    }

    void validate() const {
        if (!(gamma0 > 0.0) || !std::isfinite(gamma0))
            throw std::invalid_argument("reservoir gamma0 must be positive and finite");
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("reservoir lambda must be positive and finite");
        if (!std::isfinite(delta)) throw std::invalid_argument("reservoir delta must be finite");
    }
};

/// Uniform grid t_k = k * t_max / n_steps, k = 0..n_steps.
struct TimeGrid {
    double t_max = 10.0;
    std::size_t n_steps = 1000;

    static TimeGrid make(double t_max, std::size_t n_steps) {
        TimeGrid g{t_max, n_steps};
        g.validate();
        return g;
    }

    void validate() const {
        if (!(t_max > 0.0) || !std::isfinite(t_max))
            throw std::invalid_argument("time grid t_max must be positive and finite");
        if (n_steps < 2) throw std::invalid_argument("time grid needs n_steps >= 2");
    }

    double dt() const { return t_max / static_cast<double>(n_steps); }
    std::size_t size() const { return n_steps + 1; }
    double time(std::size_t k) const { return static_cast<double>(k) * dt(); }
};

/**
 * Reservoir correlation function f(tau), tau >= 0.
 *
 * Lorentzian kernels carry their parameters; anything else (structured baths,
 * tabulated correlation functions) can be plugged in as a custom callable.
 */
class CorrelationKernel {
public:
    enum class Family { zero, lorentzian, custom };

    static CorrelationKernel zero() { return CorrelationKernel(Family::zero, {}, {}); }

    static CorrelationKernel lorentzian(const ReservoirParams& p) {
        p.validate();
        return CorrelationKernel(Family::lorentzian, p, {});
    }

    static CorrelationKernel custom(std::function<cplx(double)> f) {
        if (!f) throw std::invalid_argument("custom kernel needs a callable");
        return CorrelationKernel(Family::custom, {}, std::move(f));
    }

    Family family() const { return family_; }
    const ReservoirParams& params() const { return params_; }

    cplx operator()(double tau) const {
        switch (family_) {
        case Family::zero:
            return 0.0;
        case Family::lorentzian: {
            const cplx rate(params_.lambda, -params_.delta);
            return 0.5 * params_.gamma0 * params_.lambda * std::exp(-rate * tau);
        }
        case Family::custom:
            return fn_(tau);
        }
        return 0.0;
    }

private:
    CorrelationKernel(Family fam, ReservoirParams p, std::function<cplx(double)> f)
        : family_(fam), params_(p), fn_(std::move(f)) {}

    Family family_;
    ReservoirParams params_;
    std::function<cplx(double)> fn_;
};

inline CorrelationKernel correlation_lorentzian(const ReservoirParams& p) {
    return CorrelationKernel::lorentzian(p);
}

/**
 * Closed-form h(t) for the detuned Lorentzian reservoir:
 *
 *     h(t) = e^{-a t/2} [cosh(d t/2) + (a/d) sinh(d t/2)],
 *     a = lambda - i Delta,  d = sqrt(a^2 - 2 gamma0 lambda).
 *
 * The expression is even in d, so the principal root is used. Near d = 0 a
 * Taylor expansion replaces the sinh(x)/d quotient; for |d t/2| >= 1 the
 * exponentials are combined so that large t cannot overflow.
 */
inline cplx h_analytic(const ReservoirParams& p, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("h_analytic requires t >= 0");
    const cplx a(p.lambda, -p.delta);
    const cplx d = std::sqrt(a * a - 2.0 * p.gamma0 * p.lambda);
    const cplx x = 0.5 * d * t;

    if (std::abs(d) * t < 1e-6) {
        const cplx x2 = x * x;
        const cplx cosh_x = 1.0 + 0.5 * x2;
        const cplx sinh_over_d = 0.5 * t * (1.0 + x2 / 6.0);
        return std::exp(-0.5 * a * t) * (cosh_x + a * sinh_over_d);
    }
    if (std::abs(x) < 1.0) {
        return std::exp(-0.5 * a * t) * (std::cosh(x) + (a / d) * std::sinh(x));
    }
    const cplx ratio = a / d;
    return 0.5 * ((1.0 + ratio) * std::exp(0.5 * (d - a) * t) +
                  (1.0 - ratio) * std::exp(-0.5 * (d + a) * t));
}

inline std::vector<cplx> h_analytic_series(const ReservoirParams& p, const TimeGrid& grid) {
    grid.validate();
    std::vector<cplx> h(grid.size());
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = h_analytic(p, grid.time(k));
    return h;
}

struct VolterraOptions {
    /// Largest acceptable change in |h| when the step is halved.
    double convergence_tol = 1e-6;
    /// Run the half-step solve and compare; disabling halves the cost.
    bool self_check = true;
};

struct VolterraResult {
    std::vector<cplx> h;
    /// max_k | |h_dt(t_k)| - |h_dt/2(t_k)| |, or 0 when self_check is off.
    double refinement_change = 0.0;
    bool converged = true;
    std::string warning;
};

namespace detail {

// Heun predictor-corrector on a uniform grid with trapezoidal quadrature
// for the memory integral. Cost is O(n^2) kernel-weighted sums.
inline std::vector<cplx> volterra_heun(const CorrelationKernel& kernel, double dt,
                                       std::size_t n_steps) {
    std::vector<cplx> f(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) f[k] = kernel(static_cast<double>(k) * dt);

    std::vector<cplx> h(n_steps + 1);
    h[0] = 1.0;
    cplx rate_n = 0.0;  // dh/dt at t_n; zero at t = 0

    for (std::size_t n = 0; n < n_steps; ++n) {
        const cplx predicted = h[n] + dt * rate_n;

        // Trapezoid for \int_0^{t_{n+1}} f(t_{n+1} - s) h(s) ds, with the
        // endpoint s = t_{n+1} taken from the predictor.
        const std::size_t m = n + 1;
        cplx interior = 0.5 * f[m] * h[0];
        for (std::size_t j = 1; j < m; ++j) interior += f[m - j] * h[j];
        const cplx rate_pred = -dt * (interior + 0.5 * f[0] * predicted);

        h[m] = h[n] + 0.5 * dt * (rate_n + rate_pred);
        rate_n = -dt * (interior + 0.5 * f[0] * h[m]);
    }
    return h;
}

}  // namespace detail

/**
 * Solve the memory-kernel equation for h on `grid`. With self_check on, the
 * solve is repeated at half the step and the result flagged when |h| moves
 * by more than the tolerance.
 */
inline VolterraResult h_volterra(const CorrelationKernel& kernel, const TimeGrid& grid,
                                 const VolterraOptions& opts = {}) {
    grid.validate();
    VolterraResult out;
    out.h = detail::volterra_heun(kernel, grid.dt(), grid.n_steps);
    if (!opts.self_check) return out;

    const auto fine = detail::volterra_heun(kernel, 0.5 * grid.dt(), 2 * grid.n_steps);
    double change = 0.0;
    for (std::size_t k = 0; k < out.h.size(); ++k)
        change = std::max(change, std::abs(std::abs(out.h[k]) - std::abs(fine[2 * k])));
    out.refinement_change = change;
    if (change > opts.convergence_tol) {
        out.converged = false;
        std::ostringstream os;
        os << "h_volterra: halving dt changes |h| by " << change << " (tolerance "
           << opts.convergence_tol << "); refine the grid";
        out.warning = os.str();
    }
    return out;
}

}  // namespace qdecay
