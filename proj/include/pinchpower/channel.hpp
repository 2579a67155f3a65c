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

#ifndef PINCHPOWER_CHANNEL_HPP
#define PINCHPOWER_CHANNEL_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinchpower/geometry.hpp"

namespace pinchpower {

/// A user coincides with a radiating antenna; the line-of-sight amplitude
/// sqrt(eta)/r is undefined there.
class singular_geometry_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Single-antenna line-of-sight phasor.
///
/// Amplitude sqrt(eta)/r; the phase accrues 2*pi*r/lambda over the air path
/// plus 2*pi*s/lambda_g over the guided path from the feed to the antenna,
/// where r is the antenna-to-user distance and s the feed-to-antenna distance.
inline std::complex<double> guided_los_phasor(double air_distance, double feed_distance,
                                              const WaveguideParams& params) {
    if (!(air_distance > 0.0))
        throw singular_geometry_error("guided_los_phasor: zero antenna-to-user distance");
    const double amplitude = std::sqrt(params.path_constant) / air_distance;
    const double phase = -2.0 * std::numbers::pi *
                         (air_distance / params.wavelength + feed_distance / params.guided_wavelength);
    return std::polar(amplitude, phase);
}

} // namespace detail

/// Composite gain from waveguide n to its own user m: the coherent sum of the
/// phasors of all M antennas on the waveguide, taken in ascending antenna
/// order so repeated evaluations are bit-identical.
inline std::complex<double> own_channel_gain(const SystemLayout& layout, const WaveguideParams& params,
                                             std::size_t n, std::size_t m) {
    std::complex<double> h{0.0, 0.0};
    for (std::size_t i = 0; i < layout.users_per_waveguide(); ++i) {
        const double r = distance(layout.user(n, m), layout.pinch(n, i));
        if (r == 0.0)
            throw singular_geometry_error("own_channel_gain: user (" + std::to_string(n) + "," +
                                          std::to_string(m) + ") coincides with antenna " + std::to_string(i));
        h += detail::guided_los_phasor(r, distance(layout.feed(n), layout.pinch(n, i)), params);
    }
    return h;
}

/// Gain from antenna i of waveguide n_prime to user m of waveguide n (single
/// phasor; the guided phase is the one accrued along waveguide n_prime).
inline std::complex<double> cross_channel_gain(const SystemLayout& layout, const WaveguideParams& params,
                                               std::size_t n_prime, std::size_t n,
                                               std::size_t i, std::size_t m) {
    if (n_prime == n)
        throw std::invalid_argument("cross_channel_gain: antenna and user on the same waveguide");
    const double r = distance(layout.user(n, m), layout.pinch(n_prime, i));
    if (r == 0.0)
        throw singular_geometry_error("cross_channel_gain: user (" + std::to_string(n) + "," +
                                      std::to_string(m) + ") coincides with antenna (" +
                                      std::to_string(n_prime) + "," + std::to_string(i) + ")");
    return detail::guided_los_phasor(r, distance(layout.feed(n_prime), layout.pinch(n_prime, i)), params);
}

/// Immutable per-scenario channel data, precomputed once and shared by the
/// power-control routines:
///
///   own_gain_sq(n,m)                    |h_{n,m}|^2
///   normalized_cross_gain_sq(n',n,i,m)  |h_{n',n,i,m}|^2 / |h_{n,m}|^2,  n' != n
///   normalized_noise(n,m)               sigma^2 / |h_{n,m}|^2            [W]
class ChannelTable {
public:
    static ChannelTable build(const SystemLayout& layout, const WaveguideParams& params,
                              double noise_power) {
        if (!(noise_power > 0.0)) throw std::invalid_argument("ChannelTable: noise power must be > 0");
        ChannelTable t(layout.num_waveguides(), layout.users_per_waveguide());
        for (std::size_t n = 0; n < t.n_; ++n)
            for (std::size_t m = 0; m < t.m_; ++m) {
                const double gain = std::norm(own_channel_gain(layout, params, n, m));
                t.own_[n * t.m_ + m] = gain;
                t.noise_[n * t.m_ + m] = noise_power / gain;
            }
        for (std::size_t np = 0; np < t.n_; ++np)
            for (std::size_t n = 0; n < t.n_; ++n) {
                if (np == n) continue;
                for (std::size_t i = 0; i < t.m_; ++i)
                    for (std::size_t m = 0; m < t.m_; ++m)
                        t.cross_[t.cross_index(np, n, i, m)] =
                            std::norm(cross_channel_gain(layout, params, np, n, i, m)) /
                            t.own_[n * t.m_ + m];
            }
        return t;
    }

    /// Table from already-normalized quantities (measurement data, synthetic
    /// cases). `cross(np, n, i, m)` is consulted only for np != n.
    template <typename CrossFn>
    static ChannelTable from_normalized(std::size_t num_waveguides, std::size_t users_per_waveguide,
                                        CrossFn&& cross, const std::vector<double>& normalized_noise,
                                        const std::vector<double>& own_gain_sq = {}) {
        ChannelTable t(num_waveguides, users_per_waveguide);
        if (normalized_noise.size() != t.own_.size())
            throw std::invalid_argument("ChannelTable: need N*M noise entries");
        t.noise_ = normalized_noise;
        if (!own_gain_sq.empty()) {
            if (own_gain_sq.size() != t.own_.size())
                throw std::invalid_argument("ChannelTable: need N*M own-gain entries");
            t.own_ = own_gain_sq;
        } else {
            t.own_.assign(t.own_.size(), 1.0);
        }
        for (std::size_t np = 0; np < t.n_; ++np)
            for (std::size_t n = 0; n < t.n_; ++n) {
                if (np == n) continue;
                for (std::size_t i = 0; i < t.m_; ++i)
                    for (std::size_t m = 0; m < t.m_; ++m)
                        t.cross_[t.cross_index(np, n, i, m)] = cross(np, n, i, m);
            }
        for (double v : t.noise_)
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("ChannelTable: normalized noise must be finite and > 0");
        for (double v : t.cross_)
            if (v < 0.0 || !std::isfinite(v))
                throw std::invalid_argument("ChannelTable: cross gains must be finite and >= 0");
        return t;
    }

    std::size_t num_waveguides() const { return n_; }
    std::size_t users_per_waveguide() const { return m_; }

    double own_gain_sq(std::size_t n, std::size_t m) const { return own_[n * m_ + m]; }
    double normalized_noise(std::size_t n, std::size_t m) const { return noise_[n * m_ + m]; }

    double normalized_cross_gain_sq(std::size_t n_prime, std::size_t n,
                                    std::size_t i, std::size_t m) const {
        if (n_prime == n)
            throw std::invalid_argument("normalized_cross_gain_sq: defined only for distinct waveguides");
        return cross_[cross_index(n_prime, n, i, m)];
    }

    friend bool operator==(const ChannelTable&, const ChannelTable&) = default;

private:
    ChannelTable(std::size_t n, std::size_t m)
        : n_(n), m_(m), own_(n * m, 0.0), noise_(n * m, 0.0), cross_(n * n * m * m, 0.0) {}

    std::size_t cross_index(std::size_t np, std::size_t n, std::size_t i, std::size_t m) const {
        return ((np * n_ + n) * m_ + i) * m_ + m;
    }

    std::size_t n_, m_;
    std::vector<double> own_;   // |h|^2, indexed n*M + m
    std::vector<double> noise_; // sigma^2 / |h|^2
    std::vector<double> cross_; // normalized, indexed ((np*N + n)*M + i)*M + m
};

inline ChannelTable build_channel_table(const SystemLayout& layout, const WaveguideParams& params,
                                        double noise_power) {
    return ChannelTable::build(layout, params, noise_power);
}

} // namespace pinchpower

#endif
