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

// CSV emission with 17 significant digits, so every double round-trips.

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdecay::scenario {

inline std::string format_double(double x) {
    std::array<char, 40> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

inline double parse_csv_double(std::string_view s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("csv: not a number: '" + std::string(s) + "'");
    return x;
}

inline void write_csv_row(std::ostream& os, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << format_double(values[i]);
    }
    os << '\n';
}

inline void write_csv_header(std::ostream& os, std::span<const std::string_view> names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) os << ',';
        os << names[i];
    }
    os << '\n';
}

/// Reads a numeric CSV with a header; returns the rows and checks the header.
inline std::vector<std::vector<double>> read_numeric_csv(std::istream& in,
                                                         std::span<const std::string_view> expected) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) want += ',';
        want += expected[i];
    }
    if (line != want) throw std::runtime_error("csv: unexpected header '" + line + "'");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            row.push_back(parse_csv_double(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (row.size() != expected.size())
            throw std::runtime_error("csv: row has " + std::to_string(row.size()) + " fields");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qdecay::scenario
