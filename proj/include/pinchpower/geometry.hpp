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

#ifndef PINCHPOWER_GEOMETRY_HPP
#define PINCHPOWER_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinchpower {

inline constexpr double speed_of_light = 299792458.0; // m/s

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Position3D&, const Position3D&) = default;
};

inline double distance(const Position3D& a, const Position3D& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline bool is_finite(const Position3D& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

/// Where the waveguide feed points sit.
///
/// shared_origin places every feed at (0, 0, d); per_waveguide_axis places the
/// feed of waveguide n on its own axis at (0, nD, d), n = 1-based.
enum class FeedConvention { shared_origin, per_waveguide_axis };

/// Network geometry: N waveguides at height d, each carrying M pinching
/// antennas, with one ground user per antenna.
///
/// The standard grid uses 1-based construction formulas
///   pinch(n,i) = (iD, nD, d),   user(n,m) = (mD, nD, 0),
/// while the C++ accessors are 0-based (pinch(0,0) is the antenna the
/// formulas call (1,1)).
class SystemLayout {
public:
    std::size_t num_waveguides() const { return n_; }
    std::size_t users_per_waveguide() const { return m_; }
    double spacing() const { return spacing_; }
    double height() const { return height_; }
    FeedConvention convention() const { return convention_; }

    const Position3D& feed(std::size_t n) const { return feeds_.at(n); }
    const Position3D& pinch(std::size_t n, std::size_t i) const { return pinches_.at(n * m_ + i); }
    const Position3D& user(std::size_t n, std::size_t m) const { return users_.at(n * m_ + m); }

    /// Builds a layout from explicit positions. Users must lie in the ground
    /// plane (z = 0) and all antennas and feeds at a common height z = d > 0.
    static SystemLayout from_positions(std::vector<Position3D> feeds,
                                       std::vector<Position3D> pinches,
                                       std::vector<Position3D> users,
                                       double spacing,
                                       FeedConvention convention = FeedConvention::shared_origin) {
        const std::size_t n = feeds.size();
        if (n == 0) throw std::invalid_argument("SystemLayout: need at least one waveguide");
        if (pinches.size() % n != 0 || pinches.size() != users.size() || pinches.empty())
            throw std::invalid_argument("SystemLayout: need N*M pinch and user positions");
        if (!(spacing > 0.0)) throw std::invalid_argument("SystemLayout: spacing must be > 0");
        const double d = pinches.front().z;
        if (!(d > 0.0)) throw std::invalid_argument("SystemLayout: antenna height must be > 0");
        for (const auto& p : feeds)
            if (!is_finite(p) || p.z != d) throw std::invalid_argument("SystemLayout: feed not at antenna height");
        for (const auto& p : pinches)
            if (!is_finite(p) || p.z != d) throw std::invalid_argument("SystemLayout: antennas must share one height");
        for (const auto& p : users)
            if (!is_finite(p) || p.z != 0.0) throw std::invalid_argument("SystemLayout: users must lie at z = 0");

        SystemLayout layout;
        layout.n_ = n;
        layout.m_ = pinches.size() / n;
        layout.spacing_ = spacing;
        layout.height_ = d;
        layout.convention_ = convention;
        layout.feeds_ = std::move(feeds);
        layout.pinches_ = std::move(pinches);
        layout.users_ = std::move(users);
        return layout;
    }

private:
    std::size_t n_ = 0, m_ = 0;
    double spacing_ = 0.0, height_ = 0.0;
    FeedConvention convention_ = FeedConvention::shared_origin;
    std::vector<Position3D> feeds_, pinches_, users_;
};

/// Standard grid layout: waveguide n runs along y = nD, antenna i at x = iD,
/// user m directly below antenna m (indices 1-based in these formulas).
inline SystemLayout build_layout(std::size_t num_waveguides, std::size_t users_per_waveguide,
                                 double spacing, double height,
                                 FeedConvention convention = FeedConvention::shared_origin) {
    if (num_waveguides < 1 || users_per_waveguide < 1)
        throw std::invalid_argument("build_layout: need at least one waveguide and one user");
    if (!(spacing > 0.0) || !(height > 0.0))
        throw std::invalid_argument("build_layout: spacing and height must be > 0");

    std::vector<Position3D> feeds, pinches, users;
    feeds.reserve(num_waveguides);
    pinches.reserve(num_waveguides * users_per_waveguide);
    users.reserve(num_waveguides * users_per_waveguide);
    for (std::size_t n = 1; n <= num_waveguides; ++n) {
        const double yn = static_cast<double>(n) * spacing;
        feeds.push_back(convention == FeedConvention::shared_origin
                            ? Position3D{0.0, 0.0, height}
                            : Position3D{0.0, yn, height});
        for (std::size_t i = 1; i <= users_per_waveguide; ++i)
            pinches.push_back({static_cast<double>(i) * spacing, yn, height});
        for (std::size_t m = 1; m <= users_per_waveguide; ++m)
            users.push_back({static_cast<double>(m) * spacing, yn, 0.0});
    }
    return SystemLayout::from_positions(std::move(feeds), std::move(pinches), std::move(users),
                                        spacing, convention);
}

/// Carrier-derived radio constants.
///
///   wavelength        = c / f_c
///   guided_wavelength = wavelength / guided_ratio
///   path_constant     = c^2 / (16 pi^2 f_c^2)  [m^2], i.e. (wavelength / 4 pi)^2
struct WaveguideParams {
    double carrier_frequency = 0.0;  // Hz
    double wavelength = 0.0;         // m
    double guided_wavelength = 0.0;  // m
    double path_constant = 0.0;      // m^2
};

inline WaveguideParams derive_params(double carrier_frequency, double guided_ratio = 1.4) {
    if (!(carrier_frequency > 0.0)) throw std::invalid_argument("derive_params: carrier frequency must be > 0");
    if (!(guided_ratio > 0.0)) throw std::invalid_argument("derive_params: guided ratio must be > 0");
    WaveguideParams p;
    p.carrier_frequency = carrier_frequency;
    p.wavelength = speed_of_light / carrier_frequency;
    p.guided_wavelength = p.wavelength / guided_ratio;
    p.path_constant = speed_of_light * speed_of_light /
                      (16.0 * std::numbers::pi * std::numbers::pi * carrier_frequency * carrier_frequency);
    return p;
}

} // namespace pinchpower

#endif
