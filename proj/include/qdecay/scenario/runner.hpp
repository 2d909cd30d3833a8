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

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "qdecay/scenario/config.hpp"
#include "qdecay/scenario/csv.hpp"
#include "qdecay/scenario/trajectory.hpp"
#include "qdecay/scenario/verify.hpp"

namespace qdecay::scenario {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfigError = 2 };

namespace detail {

// Calls `write` with stdout for "-", otherwise with a freshly opened file.
inline void with_output(const std::string& path, std::ostream& stdout_stream,
                        const std::function<void(std::ostream&)>& write) {
    if (path == "-") {
        write(stdout_stream);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open '" + path + "' for writing");
    write(os);
    if (!os) throw config_error("write to '" + path + "' failed");
}

inline ChannelSetup channels_of(const ScenarioConfig& cfg) {
    ChannelSetup ch{cfg.reservoir_a, std::nullopt};
    if (!cfg.one_sided) ch.b = cfg.reservoir_b;
    return ch;
}

}  // namespace detail

/// Runs one configured scenario. Returns the process exit code.
inline int run_scenario(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<std::string> warnings;
    int code = kExitOk;

    switch (cfg.mode) {
    case Mode::hfun: {
        const auto h = sample_h(cfg.reservoir_a, cfg.grid, cfg.solver, &warnings);
        detail::with_output(cfg.out, out, [&](std::ostream& os) {
            static constexpr std::array<std::string_view, 4> cols{"t", "h_re", "h_im", "abs_h"};
            write_csv_header(os, cols);
            for (std::size_t k = 0; k < h.size(); ++k)
                write_csv_row(os, std::array<double, 4>{cfg.grid.time(k), h[k].real(), h[k].imag(), std::abs(h[k])});
        });
        break;
    }
    case Mode::evolve: {
        const auto rows = compute_trajectory(cfg.state, detail::channels_of(cfg), cfg.grid, cfg.solver, &warnings);
        detail::with_output(cfg.out, out, [&](std::ostream& os) { write_trajectory_csv(os, rows); });
        break;
    }
    case Mode::figure1: {
        const auto fig = run_figure1(cfg.grid, cfg.solver, &warnings);
        try {
            write_figure1(fig, cfg.out);
        } catch (const std::runtime_error& e) {
            throw config_error(e.what());
        }
        break;
    }
    case Mode::verify: {
        const auto rep = run_verify(cfg.seed, cfg.fault);
        detail::with_output(cfg.out, out, [&](std::ostream& os) { print_verify_report(os, rep); });
        if (!rep.passed()) {
            for (const auto& s : rep.suites)
                if (!s.passed())
                    err << "verify: suite " << s.name << " (module " << s.module << ") failed, residual "
                        << format_double(s.max_residual) << ", seed " << rep.seed << '\n';
            code = kExitVerifyFailed;
        }
        break;
    }
    case Mode::nonmarkov: {
        const Range lambdas = cfg.lambda_range.value_or(Range{cfg.reservoir_a.lambda, cfg.reservoir_a.lambda, 1});
        const Range deltas = cfg.delta_range.value_or(Range{cfg.reservoir_a.delta, cfg.reservoir_a.delta, 1});
        const auto rows = run_nonmarkov_sweep(lambdas, deltas, cfg.grid);
        detail::with_output(cfg.out, out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
        break;
    }
    }

    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return code;
}

/// Loads `config_path` and runs it; config problems map to exit code 2.
inline int run_config_file(const std::string& config_path, std::ostream& out, std::ostream& err) {
    try {
        return run_scenario(load_config(config_path), out, err);
    } catch (const config_error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

}  // namespace qdecay::scenario
