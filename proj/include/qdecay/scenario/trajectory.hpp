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
 * Time series of the entanglement quantities for one initial state and
 * channel configuration, the four standard entanglement curves, and
 * non-Markovianity sweeps over (lambda, Delta).
 */

#include <array>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdecay/decay.hpp"
#include "qdecay/dynamics.hpp"
#include "qdecay/entanglement.hpp"
#include "qdecay/nonmarkov.hpp"
#include "qdecay/scenario/config.hpp"
#include "qdecay/scenario/csv.hpp"

namespace qdecay::scenario {

struct TrajectoryRow {
    double t = 0.0;
    double ha_re = 0.0, ha_im = 0.0;
    double hb_re = 0.0, hb_im = 0.0;
    double abs_ha = 0.0, abs_hb = 0.0;
    double c_direct = 0.0;
    double c_law = 0.0;
    double q = 0.0;
    double x = 1.0;
    double d = 0.0;      ///< trace distance of the (|+>, |->) pair under channel A
    double sigma = 0.0;  ///< dD/dt

    std::array<double, 13> values() const {
        return {t, ha_re, ha_im, hb_re, hb_im, abs_ha, abs_hb, c_direct, c_law, q, x, d, sigma};
    }

    static TrajectoryRow from_values(std::span<const double> v) {
        TrajectoryRow r;
        r.t = v[0];
        r.ha_re = v[1];
        r.ha_im = v[2];
        r.hb_re = v[3];
        r.hb_im = v[4];
        r.abs_ha = v[5];
        r.abs_hb = v[6];
        r.c_direct = v[7];
        r.c_law = v[8];
        r.q = v[9];
        r.x = v[10];
        r.d = v[11];
        r.sigma = v[12];
        return r;
    }

    friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

inline constexpr std::array<std::string_view, 13> kTrajectoryColumns{
    "t", "hA_re", "hA_im", "hB_re", "hB_im", "abs_hA", "abs_hB",
    "C_direct", "C_law", "Q", "X", "D", "sigma"};

inline void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryRow> rows) {
    write_csv_header(os, kTrajectoryColumns);
    for (const auto& r : rows) write_csv_row(os, r.values());
}

inline std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
    std::vector<TrajectoryRow> rows;
    for (const auto& v : read_numeric_csv(in, kTrajectoryColumns))
        rows.push_back(TrajectoryRow::from_values(v));
    return rows;
}

/// Sampled h for one reservoir; a non-converged Volterra solve appends to `warnings`.
inline std::vector<cplx> sample_h(const ReservoirParams& p, const TimeGrid& grid, Solver solver,
                                  std::vector<std::string>* warnings = nullptr) {
    if (solver == Solver::analytic) return h_analytic_series(p, grid);
    auto res = h_volterra(correlation_lorentzian(p), grid);
    if (!res.converged && warnings) warnings->push_back(res.warning);
    return std::move(res.h);
}

struct ChannelSetup {
    ReservoirParams a;
    std::optional<ReservoirParams> b;  ///< nullopt: channel B is the identity
};

/**
 * Evolve `state` on `grid` and tabulate the direct concurrence next to the
 * closed-form prediction (two-sided pure law for pure states, product law
 * for NOE states).
 */
inline std::vector<TrajectoryRow> compute_trajectory(const InitialState& state, const ChannelSetup& ch,
                                                     const TimeGrid& grid, Solver solver,
                                                     std::vector<std::string>* warnings = nullptr) {
    const auto ha = sample_h(ch.a, grid, solver, warnings);
    const std::vector<cplx> hb =
        ch.b ? sample_h(*ch.b, grid, solver, warnings) : std::vector<cplx>(grid.size(), 1.0);

    const TwoQubitState rho0 = std::visit(
        [](const auto& s) -> TwoQubitState {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PureState2Q>)
                return pure_to_state(s);
            else
                return s.embed();
        },
        state);

    std::vector<TrajectoryRow> rows(grid.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        auto& r = rows[k];
        const ChannelPair pair(ha[k], hb[k]);
        r.t = grid.time(k);
        r.ha_re = ha[k].real();
        r.ha_im = ha[k].imag();
        r.hb_re = hb[k].real();
        r.hb_im = hb[k].imag();
        r.abs_ha = std::abs(ha[k]);
        r.abs_hb = std::abs(hb[k]);

        if (const auto* psi = std::get_if<PureState2Q>(&state)) {
            const auto law = law_two_sided_pure(*psi, pair, r.t);
            r.c_direct = law.c_direct;
            r.c_law = law.c_law;
            r.q = law.q;
            r.x = law.x;
        } else {
            const auto& noe = std::get<NOEMixedState>(state);
            r.c_direct = concurrence(evolve(rho0, pair));
            r.c_law = law_two_sided_noe(noe, pair);
            r.q = r.c_law;
            r.x = 1.0;
        }
    }

    const auto d = trace_distance_series(optimal_pair(), ha);
    const auto sigma = derivative_series(d, grid.dt());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].d = d[k];
        rows[k].sigma = sigma[k];
    }
    return rows;
}

/// The four standard curves: Bell psi one- and two-sided under detuned
/// channels, then Bell psi and Bell phi two-sided under resonant channels.
struct Figure1 {
    static constexpr double kLambda = 0.01;
    static constexpr double kDetuned = 0.5;

    std::array<std::vector<TrajectoryRow>, 4> curves;
};

inline Figure1 run_figure1(const TimeGrid& grid, Solver solver = Solver::analytic,
                           std::vector<std::string>* warnings = nullptr) {
    const auto detuned = ReservoirParams::make(Figure1::kLambda, Figure1::kDetuned);
    const auto resonant = ReservoirParams::make(Figure1::kLambda, 0.0);
    Figure1 fig;
    fig.curves[0] = compute_trajectory(presets::bell_psi(), {detuned, std::nullopt}, grid, solver, warnings);
    fig.curves[1] = compute_trajectory(presets::bell_psi(), {detuned, detuned}, grid, solver, warnings);
    fig.curves[2] = compute_trajectory(presets::bell_psi(), {resonant, resonant}, grid, solver, warnings);
    fig.curves[3] = compute_trajectory(presets::bell_phi(), {resonant, resonant}, grid, solver, warnings);
    return fig;
}

inline std::string figure1_path(const std::string& prefix, std::size_t curve) {
    return prefix + "_C" + std::to_string(curve + 1) + ".csv";
}

inline void write_figure1(const Figure1& fig, const std::string& prefix) {
    for (std::size_t i = 0; i < fig.curves.size(); ++i) {
        const auto path = figure1_path(prefix, i);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
        write_trajectory_csv(os, fig.curves[i]);
        if (!os) throw std::runtime_error("write to '" + path + "' failed");
    }
}

struct SweepRow {
    double lambda = 0.0;
    double delta = 0.0;
    double n = 0.0;
};

inline constexpr std::array<std::string_view, 3> kSweepColumns{"lambda", "delta", "N"};

/// One row per (lambda, delta), lambda-major.
inline std::vector<SweepRow> run_nonmarkov_sweep(const Range& lambdas, const Range& deltas,
                                                 const TimeGrid& grid) {
    if (lambdas.count == 0 || deltas.count == 0) throw std::invalid_argument("sweep ranges must be nonempty");
    std::vector<SweepRow> rows;
    rows.reserve(lambdas.count * deltas.count);
    for (std::size_t i = 0; i < lambdas.count; ++i)
        for (std::size_t j = 0; j < deltas.count; ++j) {
            const auto p = ReservoirParams::make(lambdas.at(i), deltas.at(j));
            rows.push_back({p.lambda, p.delta, measure_N(p, grid).n});
        }
    return rows;
}

inline void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    write_csv_header(os, kSweepColumns);
    for (const auto& r : rows) write_csv_row(os, std::array<double, 3>{r.lambda, r.delta, r.n});
}

}  // namespace qdecay::scenario
