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

#ifndef PINCHPOWER_SCENARIO_HPP
#define PINCHPOWER_SCENARIO_HPP

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pinchpower/baselines.hpp"
#include "pinchpower/channel.hpp"
#include "pinchpower/geometry.hpp"
#include "pinchpower/power_control.hpp"
#include "pinchpower/units.hpp"

namespace pinchpower {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One scenario: geometry, radio constants, rate contract and solver knobs.
/// Defaults are the standard desk-scale setup: N=2 waveguides, M=2 users,
/// D=20 m grid at 3 m height, 28 GHz carrier, guided ratio 1.4, -90 dBm
/// noise, 10 MHz band, 10 Mbps per user.
struct ScenarioConfig {
    std::size_t num_waveguides = 2;
    std::size_t users_per_waveguide = 2;
    double spacing = 20.0;             // m
    double height = 3.0;               // m
    double carrier_frequency = 28e9;   // Hz
    double guided_ratio = 1.4;
    double noise_power = 1e-12;        // W (-90 dBm)
    double bandwidth = 10e6;           // Hz
    double rate = 10e6;                // bits/s, broadcast to every user
    FeedConvention feed_convention = FeedConvention::shared_origin;
    SolverOptions solver;

    struct RateOverride { std::size_t n, m; double rate; }; // 1-based indices
    std::vector<RateOverride> rate_overrides;

    void validate() const {
        if (num_waveguides < 1 || users_per_waveguide < 1)
            throw config_error("config: N and M must be >= 1");
        if (!(spacing > 0.0) || !(height > 0.0) || !(carrier_frequency > 0.0) ||
            !(guided_ratio > 0.0) || !(noise_power > 0.0) || !(bandwidth > 0.0) || !(rate > 0.0))
            throw config_error("config: physical quantities must be > 0");
        for (const auto& o : rate_overrides) {
            if (o.n < 1 || o.n > num_waveguides || o.m < 1 || o.m > users_per_waveguide)
                throw config_error("config: rate override index out of range");
            if (!(o.rate > 0.0)) throw config_error("config: rate override must be > 0");
        }
    }
};

inline SystemLayout make_layout(const ScenarioConfig& cfg) {
    return build_layout(cfg.num_waveguides, cfg.users_per_waveguide, cfg.spacing, cfg.height,
                        cfg.feed_convention);
}

inline WaveguideParams make_params(const ScenarioConfig& cfg) {
    return derive_params(cfg.carrier_frequency, cfg.guided_ratio);
}

inline ChannelTable make_table(const ScenarioConfig& cfg) {
    return build_channel_table(make_layout(cfg), make_params(cfg), cfg.noise_power);
}

inline RateRequirements make_requirements(const ScenarioConfig& cfg) {
    std::vector<double> rates(cfg.num_waveguides * cfg.users_per_waveguide, cfg.rate);
    for (const auto& o : cfg.rate_overrides)
        rates[(o.n - 1) * cfg.users_per_waveguide + (o.m - 1)] = o.rate;
    return RateRequirements(cfg.num_waveguides, cfg.users_per_waveguide, std::move(rates),
                            cfg.bandwidth);
}

namespace detail {

inline std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

inline double positive_quantity(const std::string& key, const std::string& value,
                                const std::string& where) {
    double v;
    try {
        v = parse_quantity(value);
    } catch (const std::exception& e) {
        throw config_error(where + ": bad value for '" + key + "': " + e.what());
    }
    if (!(v > 0.0)) throw config_error(where + ": '" + key + "' must be > 0, got " + value);
    return v;
}

inline std::size_t positive_count(const std::string& key, const std::string& value,
                                  const std::string& where) {
    const double v = positive_quantity(key, value, where);
    const auto k = static_cast<std::size_t>(v);
    if (static_cast<double>(k) != v)
        throw config_error(where + ": '" + key + "' must be a positive integer, got " + value);
    return k;
}

// "rate[2][1]" -> {2, 1}
inline bool parse_indexed_key(const std::string& key, const std::string& name,
                              std::size_t& a, std::size_t& b) {
    if (key.rfind(name + "[", 0) != 0) return false;
    std::size_t i = 0, j = 0;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    std::istringstream in(key.substr(name.size()));
    if ((in >> c1 >> i >> c2 >> c3 >> j >> c4) && c1 == '[' && c2 == ']' && c3 == '[' && c4 == ']' &&
        in.peek() == std::char_traits<char>::eof() && i >= 1 && j >= 1) {
        a = i;
        b = j;
        return true;
    }
    return false;
}

} // namespace detail

/// Applies one "key=value" assignment. Accepted keys (short aliases in
/// parentheses): num_waveguides (N), users_per_waveguide (M), spacing (D),
/// height (d), carrier_frequency (f_c), guided_ratio, noise_power (sigma2),
/// bandwidth (W), rate, rate[n][m], feed_convention, power_cap, power_cap[n],
/// solver.max_iterations, solver.tolerance, solver.initial_power.
/// Indices are 1-based, matching the grid construction formulas.
inline void apply_assignment(ScenarioConfig& cfg, const std::string& key, const std::string& value,
                             const std::string& where) {
    using detail::positive_count;
    using detail::positive_quantity;

    std::size_t a = 0, b = 0;
    if (key == "N" || key == "num_waveguides") {
        cfg.num_waveguides = positive_count(key, value, where);
    } else if (key == "M" || key == "users_per_waveguide") {
        cfg.users_per_waveguide = positive_count(key, value, where);
    } else if (key == "D" || key == "spacing") {
        cfg.spacing = positive_quantity(key, value, where);
    } else if (key == "d" || key == "height") {
        cfg.height = positive_quantity(key, value, where);
    } else if (key == "f_c" || key == "carrier_frequency") {
        cfg.carrier_frequency = positive_quantity(key, value, where);
    } else if (key == "guided_ratio") {
        cfg.guided_ratio = positive_quantity(key, value, where);
    } else if (key == "sigma2" || key == "noise_power") {
        cfg.noise_power = positive_quantity(key, value, where);
    } else if (key == "W" || key == "bandwidth") {
        cfg.bandwidth = positive_quantity(key, value, where);
    } else if (key == "rate") {
        cfg.rate = positive_quantity(key, value, where);
    } else if (detail::parse_indexed_key(key, "rate", a, b)) {
        cfg.rate_overrides.push_back({a, b, positive_quantity(key, value, where)});
    } else if (key == "feed_convention") {
        const std::string v = detail::trim(value);
        if (v == "shared_origin") cfg.feed_convention = FeedConvention::shared_origin;
        else if (v == "per_waveguide_axis") cfg.feed_convention = FeedConvention::per_waveguide_axis;
        else throw config_error(where + ": feed_convention must be shared_origin or per_waveguide_axis");
    } else if (key == "power_cap") {
        cfg.solver.power_caps.assign(1, positive_quantity(key, value, where));
    } else if (detail::parse_indexed_key(key, "power_cap", a, b)) {
        throw config_error(where + ": power_cap takes one index, e.g. power_cap[2]");
    } else if (key.rfind("power_cap[", 0) == 0 && key.back() == ']') {
        std::size_t n = 0;
        std::istringstream in(key.substr(10, key.size() - 11));
        if (!(in >> n) || in.peek() != std::char_traits<char>::eof() || n < 1)
            throw config_error(where + ": bad power_cap index in '" + key + "'");
        if (cfg.solver.power_caps.size() < cfg.num_waveguides) {
            const double broadcast = cfg.solver.power_caps.size() == 1
                                         ? cfg.solver.power_caps[0]
                                         : std::numeric_limits<double>::infinity();
            cfg.solver.power_caps.assign(cfg.num_waveguides, broadcast);
        }
        if (n > cfg.solver.power_caps.size())
            throw config_error(where + ": power_cap index out of range in '" + key + "'");
        cfg.solver.power_caps[n - 1] = positive_quantity(key, value, where);
    } else if (key == "solver.max_iterations") {
        cfg.solver.max_iterations = positive_count(key, value, where);
    } else if (key == "solver.tolerance") {
        cfg.solver.tolerance = positive_quantity(key, value, where);
    } else if (key == "solver.initial_power") {
        cfg.solver.initial_power = positive_quantity(key, value, where);
    } else {
        throw config_error(where + ": unknown key '" + key + "'");
    }
}

/// Applies a command-line style "key=value" override.
inline void apply_override(ScenarioConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw config_error("override '" + assignment + "': expected key=value");
    apply_assignment(cfg, detail::trim(assignment.substr(0, eq)), detail::trim(assignment.substr(eq + 1)),
                     "override '" + assignment + "'");
}

/// Key-value scenario file: one "key = value" per line, '#' comments, blank
/// lines ignored. All keys optional; missing keys keep their defaults.
inline void apply_config_text(ScenarioConfig& cfg, std::istream& in, const std::string& filename) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        const std::string where = filename + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw config_error(where + ": expected key = value");
        apply_assignment(cfg, detail::trim(stripped.substr(0, eq)),
                         detail::trim(stripped.substr(eq + 1)), where);
    }
}

/// Defaults, then the file (if given), then the overrides, last-wins.
inline ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {}) {
    ScenarioConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open config file '" + path + "'");
        apply_config_text(cfg, in, path);
    }
    for (const auto& o : overrides) apply_override(cfg, o);
    cfg.validate();
    return cfg;
}

} // namespace pinchpower

#endif
