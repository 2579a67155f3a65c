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

#ifndef PINCHPOWER_BASELINES_HPP
#define PINCHPOWER_BASELINES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinchpower/power_control.hpp"

namespace pinchpower {

/// Equal-coefficient benchmark result. `binding_rank[n]` is the rank whose
/// rate floor fixes P_n. When infeasible, `violation` names the first
/// (waveguide, rank) whose floor exceeds the scheme's hard rate ceiling.
struct BaselineResult {
    std::vector<double> waveguide_power;
    bool feasible = false;
    std::vector<std::size_t> binding_rank;
    std::size_t iterations = 0;
    std::optional<std::pair<std::size_t, std::size_t>> violation;

    double total_power() const {
        double s = 0.0;
        for (double v : waveguide_power) s += v;
        return s;
    }
};

/// Equal power allocation: every user of waveguide n holds the coefficient
/// 1/M, and P_n is the smallest waveguide power meeting all rate floors given
/// the other waveguides' powers. The user at rank r needs
///
///   P_n >= M * target * IIN / (1 - target * k),   k = M - r later-ranked users,
///
/// which is possible only while target * k < 1; the scheme therefore has a
/// hard per-rank rate ceiling W*log2(1 + 1/k) no power can overcome. The
/// outer loop sweeps the waveguides like fixed_point_solve until the P_n
/// settle.
inline BaselineResult equal_power_solve(const ChannelTable& table, const RateRequirements& requirements,
                                        const SolverOptions& options = {}) {
    const std::size_t N = table.num_waveguides();
    const std::size_t M = table.users_per_waveguide();
    if (requirements.num_waveguides() != N || requirements.users_per_waveguide() != M)
        throw std::invalid_argument("equal_power_solve: requirements shape mismatch");
    options.validate(N);

    BaselineResult result;
    result.waveguide_power.assign(N, static_cast<double>(M) * options.initial_power);
    result.binding_rank.assign(N, 0);

    AllocationState shared(N, M, options.initial_power);
    auto refresh = [&](std::size_t n) {
        for (std::size_t m = 0; m < M; ++m)
            shared.set_power(n, m, result.waveguide_power[n] / static_cast<double>(M));
    };
    for (std::size_t n = 0; n < N; ++n) refresh(n);

    for (std::size_t t = 1; t <= options.max_iterations; ++t) {
        const std::vector<double> previous = result.waveguide_power;
        for (std::size_t n = 0; n < N; ++n) {
            const DecodingOrder order = interference_order(table, shared, n);
            double required = 0.0;
            std::size_t binding = 0;
            for (std::size_t rank = 0; rank < M; ++rank) {
                const std::size_t user = order.user_at_rank[rank];
                const double target = requirements.sinr_target(n, user);
                const double later = static_cast<double>(M - 1 - rank);
                if (target * later >= 1.0) {
                    result.feasible = false;
                    result.iterations = t;
                    result.violation = {n, rank};
                    return result;
                }
                const double need = static_cast<double>(M) * target * iin(table, shared, n, user) /
                                    (1.0 - target * later);
                if (need > required) {
                    required = need;
                    binding = rank;
                }
            }
            result.waveguide_power[n] = required;
            result.binding_rank[n] = binding;
            refresh(n);
        }
        result.iterations = t;
        double max_rel = 0.0;
        for (std::size_t n = 0; n < N; ++n)
            max_rel = std::max(max_rel,
                               std::abs(result.waveguide_power[n] - previous[n]) / previous[n]);
        if (max_rel <= options.tolerance) {
            result.feasible = true;
            for (std::size_t n = 0; n < N; ++n)
                if (result.waveguide_power[n] > options.cap(n)) result.feasible = false;
            return result;
        }
    }
    result.feasible = false;
    return result;
}

struct OracleOptions {
    std::size_t grid_points_per_dim = 40;
    double power_upper_bound = 1e-3;   // W
    double lower_bound_scale = 0.1;    // lower grid edge = scale * normalized noise
};

/// Exhaustive-search result. `grid_resolution` is the additive grid step at
/// the optimum (largest per-user gap to the next grid point).
struct OracleResult {
    bool found = false;
    double best_total_power = 0.0;
    std::vector<double> best_powers; // N*M
    double grid_resolution = 0.0;
    std::uint64_t evaluations = 0;
};

/// Brute-force minimum-power search over a per-user logarithmic power grid.
/// Every candidate is judged from scratch: decoding orders are re-derived
/// from the candidate powers and each SINR is checked against its floor.
/// Only intended for tiny instances (N*M <= 4).
inline OracleResult brute_force_min_power(const ChannelTable& table, const RateRequirements& requirements,
                                          const OracleOptions& options = {}) {
    const std::size_t N = table.num_waveguides();
    const std::size_t M = table.users_per_waveguide();
    const std::size_t U = N * M;
    if (U > 4) throw std::invalid_argument("brute_force_min_power: instance too large (N*M must be <= 4)");
    if (requirements.num_waveguides() != N || requirements.users_per_waveguide() != M)
        throw std::invalid_argument("brute_force_min_power: requirements shape mismatch");
    const std::size_t K = options.grid_points_per_dim;
    if (K < 2) throw std::invalid_argument("brute_force_min_power: need at least 2 grid points");
    if (!(options.power_upper_bound > 0.0) || !(options.lower_bound_scale > 0.0))
        throw std::invalid_argument("brute_force_min_power: bounds must be > 0");

    std::vector<std::vector<double>> grid(U);
    std::vector<double> ratio(U);
    for (std::size_t u = 0; u < U; ++u) {
        const double lb = options.lower_bound_scale * table.normalized_noise(u / M, u % M);
        const double ub = options.power_upper_bound;
        if (!(ub > lb)) throw std::invalid_argument("brute_force_min_power: upper bound below grid start");
        ratio[u] = std::pow(ub / lb, 1.0 / static_cast<double>(K - 1));
        grid[u].resize(K);
        for (std::size_t k = 0; k < K; ++k)
            grid[u][k] = lb * std::pow(ub / lb, static_cast<double>(k) / static_cast<double>(K - 1));
    }

    AllocationState candidate(N, M);
    std::vector<std::size_t> index(U, 0);
    OracleResult result;

    auto feasible = [&]() {
        for (std::size_t n = 0; n < N; ++n) {
            const DecodingOrder order = interference_order(table, candidate, n);
            double later = 0.0;
            for (std::size_t rank = M; rank-- > 0;) {
                const std::size_t user = order.user_at_rank[rank];
                const double sinr = candidate.power(n, user) /
                                    (later + iin(table, candidate, n, user));
                if (sinr < requirements.sinr_target(n, user)) return false;
                later += candidate.power(n, user);
            }
        }
        return true;
    };

    while (true) {
        for (std::size_t u = 0; u < U; ++u) candidate.set_power(u / M, u % M, grid[u][index[u]]);
        ++result.evaluations;
        const double total = candidate.total_power();
        if ((!result.found || total < result.best_total_power) && feasible()) {
            result.found = true;
            result.best_total_power = total;
            result.best_powers = candidate.raw();
        }
        // odometer
        std::size_t u = 0;
        while (u < U && ++index[u] == K) index[u++] = 0;
        if (u == U) break;
    }

    if (result.found) {
        for (std::size_t u = 0; u < U; ++u)
            result.grid_resolution = std::max(result.grid_resolution,
                                              result.best_powers[u] * (ratio[u] - 1.0));
    }
    return result;
}

/// Closed-form total power in the wide-spacing limit: each user's gain
/// collapses to the overhead antenna (|h|^2 -> eta/d^2), inter-waveguide
/// coupling vanishes, and every waveguide reduces to the interference-free
/// back-substitution cascade over the common noise floor sigma^2 d^2 / eta.
inline double asymptotic_decoupled_power(const RateRequirements& requirements,
                                         const WaveguideParams& params,
                                         double height, double noise_power) {
    if (!(height > 0.0) || !(noise_power > 0.0))
        throw std::invalid_argument("asymptotic_decoupled_power: height and noise must be > 0");
    const double floor = noise_power * height * height / params.path_constant;
    double total = 0.0;
    for (std::size_t n = 0; n < requirements.num_waveguides(); ++n) {
        double later = 0.0;
        for (std::size_t m = requirements.users_per_waveguide(); m-- > 0;)
            later += requirements.sinr_target(n, m) * (later + floor);
        total += later;
    }
    return total;
}

/// Report of randomized checks of the three standard-interference-function
/// properties of the per-pass power update (decoding orders held fixed):
/// positivity f(P) > 0, componentwise monotonicity, and strict scalability
/// beta*f(P) > f(beta*P) for beta > 1.
struct StandardPropertyReport {
    std::size_t samples = 0;
    std::size_t positivity_failures = 0;
    std::size_t monotonicity_failures = 0;
    std::size_t scalability_failures = 0;
    std::uint64_t seed = 0;
    std::string first_failure;

    bool all_passed() const {
        return positivity_failures == 0 && monotonicity_failures == 0 && scalability_failures == 0;
    }
};

namespace detail {

/// One application of the per-waveguide minimum-power map under fixed orders.
inline AllocationState standard_map(const ChannelTable& table, const RateRequirements& requirements,
                                    const std::vector<DecodingOrder>& orders,
                                    const AllocationState& input) {
    AllocationState out(table.num_waveguides(), table.users_per_waveguide());
    for (std::size_t n = 0; n < table.num_waveguides(); ++n) {
        const std::vector<double> p = waveguide_min_powers(table, input, orders[n], requirements, n);
        for (std::size_t m = 0; m < table.users_per_waveguide(); ++m) out.set_power(n, m, p[m]);
    }
    return out;
}

} // namespace detail

inline StandardPropertyReport verify_standard_properties(const ChannelTable& table,
                                                         const RateRequirements& requirements,
                                                         std::size_t sample_count,
                                                         std::uint64_t seed) {
    const std::size_t N = table.num_waveguides();
    const std::size_t M = table.users_per_waveguide();
    StandardPropertyReport report;
    report.samples = sample_count;
    report.seed = seed;

    // orders frozen from the geometry (uniform reference powers)
    std::vector<DecodingOrder> orders;
    const AllocationState reference(N, M, 1e-9);
    for (std::size_t n = 0; n < N; ++n) orders.push_back(interference_order(table, reference, n));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_power(std::log(1e-9), std::log(1e-1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> beta_dist(std::nextafter(1.0, 2.0), 10.0);

    auto record = [&](std::size_t sample, const char* property, std::size_t& counter) {
        ++counter;
        if (report.first_failure.empty()) {
            std::ostringstream os;
            os << property << " violated at sample " << sample;
            report.first_failure = os.str();
        }
    };

    for (std::size_t s = 0; s < sample_count; ++s) {
        AllocationState lower(N, M), upper(N, M), scaled(N, M);
        const double beta = beta_dist(rng);
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t m = 0; m < M; ++m) {
                const double p = std::exp(log_power(rng));
                lower.set_power(n, m, p);
                upper.set_power(n, m, p * (1.0 + unit(rng)));
                scaled.set_power(n, m, beta * p);
            }

        const AllocationState f_lower = detail::standard_map(table, requirements, orders, lower);
        const AllocationState f_upper = detail::standard_map(table, requirements, orders, upper);
        const AllocationState f_scaled = detail::standard_map(table, requirements, orders, scaled);

        bool positivity = true, monotonicity = true, scalability = true;
        for (std::size_t k = 0; k < N * M; ++k) {
            if (!(f_lower.raw()[k] > 0.0)) positivity = false;
            if (f_upper.raw()[k] < f_lower.raw()[k]) monotonicity = false;
            if (!(beta * f_lower.raw()[k] > f_scaled.raw()[k])) scalability = false;
        }
        if (!positivity) record(s, "positivity", report.positivity_failures);
        if (!monotonicity) record(s, "monotonicity", report.monotonicity_failures);
        if (!scalability) record(s, "scalability", report.scalability_failures);
    }
    return report;
}

} // namespace pinchpower

#endif
