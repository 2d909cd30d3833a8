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
 * Scenario configuration: flat `key = value` text, one pair per line, `#`
 * starts a comment. All times and rates are in units of gamma0.
 *
 *   mode        hfun | evolve | figure1 | verify | nonmarkov     (required)
 *   lambda_a    delta_a    lambda_b    delta_b                    (reservoirs)
 *   one_sided   true | false        channel B is the identity when true
 *   state       bell_psi | bell_phi | phi_asym(p)
 *               | amps:c1r,c1i,c2r,c2i,c3r,c3i,c4r,c4i
 *               | noe:b,c,d,zr,zi,er,ei,fr,fi
 *   t_max       n_steps             uniform grid, n_steps >= 2
 *   solver      analytic | volterra
 *   out         output path ("-" = stdout); a path prefix for figure1
 *   seed        RNG seed for verify
 *   lambda_range, delta_range       start,stop,count for the nonmarkov sweep
 *   fault       verify test hook: name of a module whose check is corrupted
 */

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdecay/decay.hpp"
#include "qdecay/dynamics.hpp"
#include "qdecay/entanglement.hpp"

namespace qdecay::scenario {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { hfun, evolve, figure1, verify, nonmarkov };
enum class Solver { analytic, volterra };

using InitialState = std::variant<PureState2Q, NOEMixedState>;

/// Inclusive linear range; count == 1 yields just `start`.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    double at(std::size_t i) const {
        if (count == 1) return start;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

struct ScenarioConfig {
    Mode mode = Mode::evolve;
    ReservoirParams reservoir_a{1.0, 0.0, 1.0};
    ReservoirParams reservoir_b{1.0, 0.0, 1.0};
    bool one_sided = false;
    std::string state_spec = "bell_psi";
    InitialState state = PureState2Q(0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0);
    TimeGrid grid{10.0, 1000};
    Solver solver = Solver::analytic;
    std::string out = "-";
    std::uint64_t seed = 12345;
    std::optional<Range> lambda_range;
    std::optional<Range> delta_range;
    std::string fault;
};

namespace presets {

inline PureState2Q bell_psi() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState2Q(0.0, s, s, 0.0);
}

inline PureState2Q bell_phi() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState2Q(s, 0.0, 0.0, s);
}

/// sqrt(p)|ee> + sqrt(1-p)|gg>
inline PureState2Q phi_asym(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("phi_asym needs p in [0, 1]");
    return PureState2Q(std::sqrt(p), 0.0, 0.0, std::sqrt(1.0 - p));
}

}  // namespace presets

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
    v = trim(v);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw config_error("key '" + std::string(key) + "': not a finite number: '" + std::string(v) + "'");
    return x;
}

inline std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    v = trim(v);
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw config_error("key '" + std::string(key) + "': not a non-negative integer: '" + std::string(v) + "'");
    return x;
}

inline bool parse_bool(std::string_view key, std::string_view v) {
    v = trim(v);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("key '" + std::string(key) + "': expected true or false");
}

inline std::vector<double> parse_list(std::string_view key, std::string_view v) {
    std::vector<double> out;
    while (true) {
        const auto comma = v.find(',');
        out.push_back(parse_double(key, v.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

inline Range parse_range(std::string_view key, std::string_view v) {
    const auto xs = parse_list(key, v);
    if (xs.size() != 3) throw config_error("key '" + std::string(key) + "': expected start,stop,count");
    const double count = xs[2];
    if (!(count >= 1.0) || count != std::floor(count))
        throw config_error("key '" + std::string(key) + "': count must be a positive integer");
    return Range{xs[0], xs[1], static_cast<std::size_t>(count)};
}

}  // namespace detail

/// Parses a `state` value into an initial state.
inline InitialState parse_state(std::string_view spec) {
    spec = detail::trim(spec);
    try {
        if (spec == "bell_psi") return presets::bell_psi();
        if (spec == "bell_phi") return presets::bell_phi();
        if (spec.starts_with("phi_asym(") && spec.ends_with(")")) {
            const auto inner = spec.substr(9, spec.size() - 10);
            return presets::phi_asym(detail::parse_double("state", inner));
        }
        if (spec.starts_with("amps:")) {
            const auto xs = detail::parse_list("state", spec.substr(5));
            if (xs.size() != 8) throw config_error("state amps: expected 8 numbers");
            const cplx c1(xs[0], xs[1]), c2(xs[2], xs[3]), c3(xs[4], xs[5]), c4(xs[6], xs[7]);
            const double n = std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4);
            // Hand-typed decimals are rarely normalized to 1e-12; tolerate that much.
            if (std::abs(n - 1.0) > 1e-6)
                throw config_error("state amps: sum |c_i|^2 = " + std::to_string(n) + " is not 1");
            return PureState2Q::normalized(c1, c2, c3, c4);
        }
        if (spec.starts_with("noe:")) {
            const auto xs = detail::parse_list("state", spec.substr(4));
            if (xs.size() != 9) throw config_error("state noe: expected 9 numbers");
            return NOEMixedState::make(xs[0], xs[1], xs[2], {xs[3], xs[4]}, {xs[5], xs[6]},
                                       {xs[7], xs[8]});
        }
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error("state '" + std::string(spec) + "': " + e.what());
    }
    throw config_error("unknown state '" + std::string(spec) + "'");
}

inline ScenarioConfig parse_config(std::istream& in) {
    std::map<std::string, std::string, std::less<>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key(detail::trim(s.substr(0, eq)));
        const std::string value(detail::trim(s.substr(eq + 1)));
        if (key.empty()) throw config_error("line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second)
            throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }

    ScenarioConfig cfg;
    const auto mode = kv.find("mode");
    if (mode == kv.end()) throw config_error("missing required key 'mode'");

    static const std::map<std::string, Mode, std::less<>> modes{{"hfun", Mode::hfun},
                                                                {"evolve", Mode::evolve},
                                                                {"figure1", Mode::figure1},
                                                                {"verify", Mode::verify},
                                                                {"nonmarkov", Mode::nonmarkov}};
    const auto m = modes.find(mode->second);
    if (m == modes.end()) throw config_error("unknown mode '" + mode->second + "'");
    cfg.mode = m->second;
    if (cfg.mode == Mode::figure1) cfg.out = "figure1";

    double t_max = cfg.grid.t_max;
    std::uint64_t n_steps = cfg.grid.n_steps;

    for (const auto& [key, value] : kv) {
        if (key == "mode") continue;
        else if (key == "lambda_a") cfg.reservoir_a.lambda = detail::parse_double(key, value);
        else if (key == "delta_a") cfg.reservoir_a.delta = detail::parse_double(key, value);
        else if (key == "lambda_b") cfg.reservoir_b.lambda = detail::parse_double(key, value);
        else if (key == "delta_b") cfg.reservoir_b.delta = detail::parse_double(key, value);
        else if (key == "one_sided") cfg.one_sided = detail::parse_bool(key, value);
        else if (key == "state") {
            cfg.state_spec = value;
            cfg.state = parse_state(value);
        }
        else if (key == "t_max") t_max = detail::parse_double(key, value);
        else if (key == "n_steps") n_steps = detail::parse_uint(key, value);
        else if (key == "solver") {
            if (value == "analytic") cfg.solver = Solver::analytic;
            else if (value == "volterra") cfg.solver = Solver::volterra;
            else throw config_error("unknown solver '" + value + "'");
        }
        else if (key == "out") {
            if (value.empty()) throw config_error("key 'out' is empty");
            cfg.out = value;
        }
        else if (key == "seed") cfg.seed = detail::parse_uint(key, value);
        else if (key == "lambda_range") cfg.lambda_range = detail::parse_range(key, value);
        else if (key == "delta_range") cfg.delta_range = detail::parse_range(key, value);
        else if (key == "fault") cfg.fault = value;
        else throw config_error("unknown key '" + key + "'");
    }

    try {
        cfg.grid = TimeGrid::make(t_max, static_cast<std::size_t>(n_steps));
        cfg.reservoir_a.validate();
        cfg.reservoir_b.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (cfg.lambda_range) {
        for (std::size_t i = 0; i < cfg.lambda_range->count; ++i)
            if (!(cfg.lambda_range->at(i) > 0.0)) throw config_error("lambda_range values must be positive");
    }
    if (cfg.mode == Mode::figure1 && cfg.out == "-")
        throw config_error("figure1 writes four files; 'out' must be a path prefix");
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace qdecay::scenario
