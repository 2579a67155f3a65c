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

#include "generated/expected_values.hpp"
#include "pinchpower/baselines.hpp"
#include "test_helpers.hpp"

using namespace pinchpower;
using test_helpers::flat_table;
using test_helpers::grid_table;
using Catch::Matchers::WithinRel;

TEST_CASE("equal coefficients with one user coincide with the optimum") {
    const ChannelTable t = grid_table(2, 1);
    const RateRequirements req = RateRequirements::uniform(2, 1, 10e6, 10e6);
    const BaselineResult equal = equal_power_solve(t, req);
    const SolveResult optimal = fixed_point_solve(t, req);
    REQUIRE(equal.feasible);
    CHECK_THAT(equal.total_power(), WithinRel(optimal.state.total_power(), 1e-9));
}

TEST_CASE("equal-power closed form on a synthetic pair of users") {
    // both targets 0.5, common noise 1e-5: rank 1 needs 2*0.5*1e-5/(1-0.5) = 2e-5
    const ChannelTable t = flat_table(1, 2, 0.0, {1e-5, 1e-5});
    const auto rate = 10e6 * std::log2(1.5); // SINR target exactly 0.5
    const RateRequirements req = RateRequirements::uniform(1, 2, rate, 10e6);
    const BaselineResult r = equal_power_solve(t, req);
    REQUIRE(r.feasible);
    CHECK_THAT(r.waveguide_power[0], WithinRel(2e-5, 1e-12));
    CHECK(r.binding_rank[0] == 0);
}

TEST_CASE("equal power hits its hard rate ceiling") {
    SECTION("three users at 15 Mbps fail at the first rank") {
        const ChannelTable t = grid_table(2, 3);
        const RateRequirements req = RateRequirements::uniform(2, 3, 15e6, 10e6);
        const BaselineResult r = equal_power_solve(t, req);
        CHECK_FALSE(r.feasible);
        REQUIRE(r.violation.has_value());
        CHECK(r.violation->second == 0); // gamma*(M-1) = 3.66 at rank 1
    }
    SECTION("two users at exactly 10 Mbps sit on the boundary and fail") {
        const ChannelTable t = grid_table(2, 2);
        const RateRequirements req = RateRequirements::uniform(2, 2, 10e6, 10e6);
        CHECK_FALSE(equal_power_solve(t, req).feasible); // gamma*(M-1) = 1
    }
    SECTION("the ceiling boundary is sharp") {
        const ChannelTable t = grid_table(1, 3);
        const double ceiling = 10e6 * std::log2(1.5); // rank-1 limit for M=3
        CHECK(equal_power_solve(t, RateRequirements::uniform(1, 3, ceiling * 0.9999, 10e6)).feasible);
        CHECK_FALSE(equal_power_solve(t, RateRequirements::uniform(1, 3, ceiling * 1.0001, 10e6)).feasible);
    }
}

TEST_CASE("equal power dominates nothing: the optimized allocation is never worse") {
    for (std::size_t n : {1u, 2u, 3u}) {
        const ChannelTable t = grid_table(n, 2);
        const RateRequirements req = RateRequirements::uniform(n, 2, 5e6, 10e6);
        const BaselineResult equal = equal_power_solve(t, req);
        const SolveResult optimal = fixed_point_solve(t, req);
        REQUIRE(equal.feasible);
        REQUIRE(optimal.report.feasible);
        CHECK(optimal.state.total_power() <= equal.total_power());
        CHECK(optimal.state.total_power() < equal.total_power() * 0.999); // strict on this asymmetric grid
    }
}

TEST_CASE("frozen equal-power total for the default grid at 5 Mbps") {
    const ChannelTable t = grid_table(2, 2);
    const RateRequirements req = RateRequirements::uniform(2, 2, 5e6, 10e6);
    const BaselineResult r = equal_power_solve(t, req);
    REQUIRE(r.feasible);
    CHECK_THAT(r.total_power(), WithinRel(expected::equal_22_5mbps_total, 1e-9));
}

TEST_CASE("brute-force oracle on closed-form instances") {
    SECTION("single user: optimum is gamma times the noise floor") {
        const ChannelTable t = grid_table(1, 1);
        const RateRequirements req = RateRequirements::uniform(1, 1, 10e6, 10e6);
        OracleOptions opt;
        opt.grid_points_per_dim = 60;
        opt.power_upper_bound = 1e-3;
        const OracleResult oracle = brute_force_min_power(t, req, opt);
        REQUIRE(oracle.found);
        const double closed = t.normalized_noise(0, 0); // gamma = 1
        CHECK(oracle.best_total_power >= closed * (1.0 - 1e-12));
        CHECK(oracle.best_total_power <= closed + oracle.grid_resolution);
    }
    SECTION("symmetric pair: optimum matches the analytic fixed point within a step") {
        const ChannelTable t = grid_table(2, 1);
        const RateRequirements req = RateRequirements::uniform(2, 1, 10e6, 10e6);
        OracleOptions opt;
        opt.grid_points_per_dim = 60;
        opt.power_upper_bound = 1e-3;
        const OracleResult oracle = brute_force_min_power(t, req, opt);
        REQUIRE(oracle.found);
        const double closed = 2.0 * expected::pair_fixed_point;
        CHECK(oracle.best_total_power >= closed * (1.0 - 1e-12));
        CHECK(oracle.best_total_power <= closed + 2.0 * oracle.grid_resolution);
    }
    SECTION("no feasible grid point is an explicit empty result") {
        const ChannelTable t = grid_table(1, 1);
        const RateRequirements req = RateRequirements::uniform(1, 1, 10e6, 10e6);
        OracleOptions opt;
        opt.grid_points_per_dim = 8;
        opt.power_upper_bound = 5e-6; // the whole grid sits below the 1.24e-5 requirement
        const OracleResult oracle = brute_force_min_power(t, req, opt);
        CHECK_FALSE(oracle.found);
        CHECK(oracle.evaluations == 8);
    }
    SECTION("oversized instances are rejected") {
        const ChannelTable t = grid_table(3, 2);
        const RateRequirements req = RateRequirements::uniform(3, 2, 5e6, 10e6);
        CHECK_THROWS_AS(brute_force_min_power(t, req), std::invalid_argument);
    }
}

TEST_CASE("oracle sandwiches the fixed point on the default grid") {
    const ChannelTable t = grid_table(2, 2);
    const RateRequirements req = RateRequirements::uniform(2, 2, 5e6, 10e6);
    const SolveResult solved = fixed_point_solve(t, req);
    REQUIRE(solved.report.feasible);
    OracleOptions opt;
    opt.grid_points_per_dim = 25; // quick version; the acceptance suite runs the full grid
    opt.power_upper_bound = 1e-3;
    const OracleResult oracle = brute_force_min_power(t, req, opt);
    REQUIRE(oracle.found);
    const double slack = 2.0 * oracle.grid_resolution * 4.0;
    CHECK(solved.state.total_power() <= oracle.best_total_power + slack);
    CHECK(solved.state.total_power() >= oracle.best_total_power - slack);

    // the winning grid point must itself audit clean
    const AllocationState best = AllocationState::from_powers(2, 2, oracle.best_powers);
    const SolutionCheck check = evaluate_solution(t, best, req);
    CHECK(check.violating_users.empty());
}

TEST_CASE("decoupled closed form") {
    const WaveguideParams params = derive_params(28e9);
    SECTION("single user equals gamma times sigma^2 d^2 / eta") {
        const RateRequirements req = RateRequirements::uniform(1, 1, 10e6, 10e6);
        const double total = asymptotic_decoupled_power(req, params, 3.0, 1e-12);
        CHECK_THAT(total, WithinRel(expected::overhead_noise, 1e-13));
        CHECK_THAT(total, WithinRel(1.240e-5, 1e-3));
    }
    SECTION("waveguides add up exactly") {
        const RateRequirements one = RateRequirements::uniform(1, 1, 10e6, 10e6);
        const RateRequirements three = RateRequirements::uniform(3, 1, 10e6, 10e6);
        CHECK_THAT(asymptotic_decoupled_power(three, params, 3.0, 1e-12),
                   WithinRel(3.0 * asymptotic_decoupled_power(one, params, 3.0, 1e-12), 1e-14));
    }
    SECTION("two equal users cascade to three noise floors") {
        const RateRequirements req = RateRequirements::uniform(1, 2, 10e6, 10e6);
        CHECK_THAT(asymptotic_decoupled_power(req, params, 3.0, 1e-12),
                   WithinRel(3.0 * expected::overhead_noise, 1e-12));
    }
}

TEST_CASE("standard-property checker returns a clean report on the default grid") {
    const ChannelTable t = grid_table(2, 2);
    const RateRequirements req = RateRequirements::uniform(2, 2, 10e6, 10e6);
    const StandardPropertyReport report = verify_standard_properties(t, req, 1000, 42);
    CHECK(report.samples == 1000);
    CHECK(report.all_passed());
    CHECK(report.first_failure.empty());
}

TEST_CASE("doubling the argument leaves exactly one noise cascade behind") {
    // 2 f(P) - f(2P) equals the map applied to zero external power, per user
    const ChannelTable t = grid_table(2, 2);
    const RateRequirements req = RateRequirements::uniform(2, 2, 10e6, 10e6);
    std::vector<DecodingOrder> orders;
    const AllocationState ref(2, 2, 1e-9);
    for (std::size_t n = 0; n < 2; ++n) orders.push_back(interference_order(t, ref, n));

    AllocationState p(2, 2), doubled(2, 2);
    const double vals[4] = {3e-6, 8e-5, 5e-4, 2e-6};
    for (std::size_t k = 0; k < 4; ++k) {
        p.set_power(k / 2, k % 2, vals[k]);
        doubled.set_power(k / 2, k % 2, 2.0 * vals[k]);
    }
    const AllocationState f1 = detail::standard_map(t, req, orders, p);
    const AllocationState f2 = detail::standard_map(t, req, orders, doubled);
    const AllocationState f0 = detail::standard_map(t, req, orders, AllocationState(2, 2));
    for (std::size_t k = 0; k < 4; ++k)
        CHECK_THAT(2.0 * f1.raw()[k] - f2.raw()[k], WithinRel(f0.raw()[k], 1e-10));
}
