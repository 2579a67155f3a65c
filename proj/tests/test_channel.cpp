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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "generated/expected_values.hpp"
#include "pinchpower/channel.hpp"

using namespace pinchpower;
using Catch::Matchers::WithinRel;

namespace {

SystemLayout translated(const SystemLayout& base, double dx, double dy) {
    std::vector<Position3D> feeds, pinches, users;
    for (std::size_t n = 0; n < base.num_waveguides(); ++n)
        feeds.push_back({base.feed(n).x + dx, base.feed(n).y + dy, base.feed(n).z});
    for (std::size_t n = 0; n < base.num_waveguides(); ++n)
        for (std::size_t i = 0; i < base.users_per_waveguide(); ++i)
            pinches.push_back({base.pinch(n, i).x + dx, base.pinch(n, i).y + dy, base.pinch(n, i).z});
    for (std::size_t n = 0; n < base.num_waveguides(); ++n)
        for (std::size_t m = 0; m < base.users_per_waveguide(); ++m)
            users.push_back({base.user(n, m).x + dx, base.user(n, m).y + dy, 0.0});
    return SystemLayout::from_positions(std::move(feeds), std::move(pinches), std::move(users),
                                        base.spacing(), base.convention());
}

} // namespace

TEST_CASE("single overhead antenna gain") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout layout = build_layout(1, 1, 20.0, 3.0);

    const std::complex<double> h = own_channel_gain(layout, params, 0, 0);
    const double gain_sq = std::norm(h);
    CHECK_THAT(std::abs(h), WithinRel(std::sqrt(params.path_constant) / 3.0, 1e-14));
    CHECK_THAT(gain_sq, WithinRel(expected::overhead_gain_sq, 1e-13));
    CHECK_THAT(gain_sq, WithinRel(8.0646e-8, 1e-3)); // textbook-rounded figure
}

TEST_CASE("single-antenna magnitude scales as the reciprocal distance") {
    const WaveguideParams params = derive_params(28e9);
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> dim(0.5, 80.0);
    for (int k = 0; k < 50; ++k) {
        const SystemLayout layout = build_layout(1, 1, dim(rng), dim(rng));
        const double r = distance(layout.user(0, 0), layout.pinch(0, 0));
        const double product = std::abs(own_channel_gain(layout, params, 0, 0)) * r;
        CHECK_THAT(product, WithinRel(std::sqrt(params.path_constant), 1e-13));
    }
}

TEST_CASE("grid own gains match the independent reference model to 1e-12") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout layout = build_layout(2, 2, 20.0, 3.0);
    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t m = 0; m < 2; ++m) {
            const double gain_sq = std::norm(own_channel_gain(layout, params, n, m));
            CHECK_THAT(gain_sq, WithinRel(expected::grid22_own_gain_sq[n * 2 + m], 1e-12));
        }

    const SystemLayout axis = build_layout(2, 2, 20.0, 3.0, FeedConvention::per_waveguide_axis);
    CHECK_THAT(std::norm(own_channel_gain(axis, params, 0, 0)),
               WithinRel(expected::grid22_axis_own_gain_sq_00, 1e-12));
}

TEST_CASE("cross gain magnitude is the plain line-of-sight amplitude") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout layout = build_layout(2, 2, 20.0, 3.0);

    // antenna 1 of waveguide 2 at (20,40,3) to user 1 of waveguide 1 at (20,20,0)
    const double r = distance(layout.user(0, 0), layout.pinch(1, 0));
    CHECK_THAT(r, WithinRel(std::sqrt(409.0), 1e-15));
    const std::complex<double> h = cross_channel_gain(layout, params, 1, 0, 0, 0);
    CHECK_THAT(std::norm(h), WithinRel(expected::cross_gain_sq_d20, 1e-13));
    CHECK_THAT(std::norm(h), WithinRel(params.path_constant / 409.0, 1e-14));

    CHECK_THROWS_AS(cross_channel_gain(layout, params, 0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("cross gain decays as spacing grows") {
    const WaveguideParams params = derive_params(28e9);
    double previous = std::numeric_limits<double>::infinity();
    for (double spacing : {5.0, 10.0, 20.0, 40.0, 80.0, 160.0}) {
        const SystemLayout layout = build_layout(2, 2, spacing, 3.0);
        const double mag = std::abs(cross_channel_gain(layout, params, 1, 0, 0, 0));
        CHECK(mag < previous);
        previous = mag;
    }
}

TEST_CASE("normalized cross gain vanishes at wide spacing") {
    const WaveguideParams params = derive_params(28e9);
    double previous = std::numeric_limits<double>::infinity();
    double first = 0.0;
    for (double spacing : {20.0, 80.0, 320.0, 1280.0}) {
        const ChannelTable table =
            build_channel_table(build_layout(2, 2, spacing, 3.0), params, 1e-12);
        const double ratio = table.normalized_cross_gain_sq(1, 0, 0, 0);
        if (first == 0.0) first = ratio;
        CHECK(ratio < previous);
        previous = ratio;
    }
    CHECK(previous < 1e-3 * first);
}

TEST_CASE("coincident antenna and user is singular") {
    const WaveguideParams params = derive_params(28e9);
    CHECK_THROWS_AS(detail::guided_los_phasor(0.0, 5.0, params), singular_geometry_error);
}

TEST_CASE("phasor sum obeys the triangle-inequality bound") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> spacing(0.5, 60.0);
    std::uniform_real_distribution<double> height(0.5, 10.0);
    std::uniform_int_distribution<std::size_t> count(1, 4);
    const WaveguideParams params = derive_params(28e9);
    for (int k = 0; k < 40; ++k) {
        const SystemLayout layout = build_layout(count(rng), count(rng), spacing(rng), height(rng));
        for (std::size_t m = 0; m < layout.users_per_waveguide(); ++m) {
            double bound = 0.0;
            for (std::size_t i = 0; i < layout.users_per_waveguide(); ++i)
                bound += std::sqrt(params.path_constant) / distance(layout.user(0, m), layout.pinch(0, i));
            CHECK(std::abs(own_channel_gain(layout, params, 0, m)) <= bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("gains are invariant under in-plane translation") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout base = build_layout(2, 2, 20.0, 3.0);
    const SystemLayout moved = translated(base, 321.5, -87.25);
    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t m = 0; m < 2; ++m) {
            const std::complex<double> a = own_channel_gain(base, params, n, m);
            const std::complex<double> b = own_channel_gain(moved, params, n, m);
            CHECK_THAT(std::abs(b), WithinRel(std::abs(a), 1e-12));
            CHECK_THAT(std::norm(cross_channel_gain(moved, params, 1 - n, n, m, m)),
                       WithinRel(std::norm(cross_channel_gain(base, params, 1 - n, n, m, m)), 1e-12));
        }
}

TEST_CASE("channel table entries for the default grid") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout layout = build_layout(2, 2, 20.0, 3.0);
    const ChannelTable table = build_channel_table(layout, params, 1e-12);

    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t m = 0; m < 2; ++m) {
            CHECK_THAT(table.own_gain_sq(n, m), WithinRel(expected::grid22_own_gain_sq[n * 2 + m], 1e-12));
            CHECK_THAT(table.normalized_noise(n, m),
                       WithinRel(expected::grid22_normalized_noise[n * 2 + m], 1e-12));
        }
    for (std::size_t k = 0; k < 8; ++k) {
        const auto& ix = expected::grid22_cross_index[k];
        CHECK_THAT(table.normalized_cross_gain_sq(ix[0], ix[1], ix[2], ix[3]),
                   WithinRel(expected::grid22_cross_gain_sq[k], 1e-12));
    }
    CHECK_THROWS_AS(table.normalized_cross_gain_sq(1, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("normalized noise of the overhead single-user case") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout layout = build_layout(1, 1, 20.0, 3.0);
    const ChannelTable table = build_channel_table(layout, params, 1e-12);
    CHECK_THAT(table.normalized_noise(0, 0), WithinRel(expected::overhead_noise, 1e-13));
    CHECK_THAT(table.normalized_noise(0, 0), WithinRel(1.2400e-5, 1e-3));
}

TEST_CASE("noise scaling is linear and gains stay put") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout layout = build_layout(2, 2, 20.0, 3.0);
    const ChannelTable a = build_channel_table(layout, params, 1e-12);
    const ChannelTable b = build_channel_table(layout, params, 1e-11);
    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t m = 0; m < 2; ++m) {
            CHECK_THAT(b.normalized_noise(n, m), WithinRel(10.0 * a.normalized_noise(n, m), 1e-15));
            CHECK(b.own_gain_sq(n, m) == a.own_gain_sq(n, m));
        }
    CHECK_THROWS_AS(build_channel_table(layout, params, 0.0), std::invalid_argument);
}

TEST_CASE("table construction is deterministic") {
    const WaveguideParams params = derive_params(28e9);
    const SystemLayout layout = build_layout(3, 2, 17.5, 4.0);
    CHECK(build_channel_table(layout, params, 1e-12) == build_channel_table(layout, params, 1e-12));
}

TEST_CASE("single-waveguide table has no cross entries to consult") {
    const WaveguideParams params = derive_params(28e9);
    const ChannelTable table = build_channel_table(build_layout(1, 2, 20.0, 3.0), params, 1e-12);
    CHECK(table.num_waveguides() == 1);
    // any cross access on one waveguide necessarily names the same waveguide twice
    CHECK_THROWS_AS(table.normalized_cross_gain_sq(0, 0, 0, 0), std::invalid_argument);
}
