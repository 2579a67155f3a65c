// SPDX-License-Identifier: Apache-2.0
//
// pinchpower - minimum-power control for multi-waveguide pinching-antenna NOMA downlinks
// Copyright (C) 2026 pinchpower contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PINCHPOWER_UNITS_HPP
#define PINCHPOWER_UNITS_HPP

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pinchpower {

// All internal quantities are SI (meters, hertz, watts, bits/s). The helpers
// below exist only for the I/O boundary.

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts) {
    if (!(watts > 0.0)) throw std::invalid_argument("watts_to_dbm: power must be > 0");
    return 30.0 + 10.0 * std::log10(watts);
}

/// Parses a numeric literal with an optional unit suffix into SI units.
///
/// Supported suffixes: GHz MHz kHz Hz, Gbps Mbps kbps bps, W mW uW nW dBm,
/// km m cm mm. A bare number is taken as already being in SI units.
/// "dBm" converts to watts; every other suffix is a pure scale factor.
inline double parse_quantity(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("parse_quantity: empty value");

    const std::string buf(text);
    char* end = nullptr;
    const double value = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) throw std::invalid_argument("parse_quantity: not a number: '" + buf + "'");

    std::string_view suffix(end);
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front()))) suffix.remove_prefix(1);
    if (suffix.empty()) return value;

    struct Scale { std::string_view name; double factor; };
    // longest suffixes first so "MHz" is not read as "Hz"
    static constexpr Scale scales[] = {
        {"GHz", 1e9},  {"MHz", 1e6},  {"kHz", 1e3},
        {"Gbps", 1e9}, {"Mbps", 1e6}, {"kbps", 1e3},
        {"bps", 1.0},  {"Hz", 1.0},
        {"mW", 1e-3},  {"uW", 1e-6},  {"nW", 1e-9},
        {"km", 1e3},   {"cm", 1e-2},  {"mm", 1e-3},
        {"W", 1.0},    {"m", 1.0},
    };
    if (suffix == "dBm") return dbm_to_watts(value);
    for (const auto& s : scales)
        if (suffix == s.name) return value * s.factor;
    throw std::invalid_argument("parse_quantity: unknown unit suffix '" + std::string(suffix) +
                                "' (expected one of GHz MHz kHz Hz Gbps Mbps kbps bps W mW uW nW dBm km m cm mm)");
}

} // namespace pinchpower

#endif
