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

#ifndef PINCHPOWER_POWER_CONTROL_HPP
#define PINCHPOWER_POWER_CONTROL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pinchpower/channel.hpp"

namespace pinchpower {

/// The iteration produced a non-finite power.
class numerical_failure_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-user transmit powers p_{n,m} in watts. These are the primary
/// variables; the waveguide power P_n = sum_m p_{n,m} and the coefficients
/// alpha_{n,m} = p_{n,m} / P_n are derived views, so the coefficient simplex
/// constraints hold by construction.
class AllocationState {
public:
    AllocationState(std::size_t num_waveguides, std::size_t users_per_waveguide, double initial = 0.0)
        : n_(num_waveguides), m_(users_per_waveguide), p_(n_ * m_, initial) {
        if (n_ < 1 || m_ < 1) throw std::invalid_argument("AllocationState: empty system");
        if (!(initial >= 0.0) || !std::isfinite(initial))
            throw std::invalid_argument("AllocationState: powers must be finite and >= 0");
    }

    static AllocationState from_powers(std::size_t num_waveguides, std::size_t users_per_waveguide,
                                       std::vector<double> powers) {
        AllocationState s(num_waveguides, users_per_waveguide);
        if (powers.size() != s.p_.size())
            throw std::invalid_argument("AllocationState: need N*M powers");
        for (double v : powers)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("AllocationState: powers must be finite and >= 0");
        s.p_ = std::move(powers);
        return s;
    }

    std::size_t num_waveguides() const { return n_; }
    std::size_t users_per_waveguide() const { return m_; }

    double power(std::size_t n, std::size_t m) const { return p_[n * m_ + m]; }
    void set_power(std::size_t n, std::size_t m, double watts) { p_[n * m_ + m] = watts; }

    double waveguide_power(std::size_t n) const {
        double sum = 0.0;
        for (std::size_t m = 0; m < m_; ++m) sum += p_[n * m_ + m];
        return sum;
    }

    double total_power() const { return std::accumulate(p_.begin(), p_.end(), 0.0); }

    /// alpha_{n,m}; undefined on an inactive waveguide (P_n = 0).
    double coefficient(std::size_t n, std::size_t m) const {
        const double pn = waveguide_power(n);
        if (!(pn > 0.0)) throw std::domain_error("AllocationState: coefficient undefined, waveguide inactive");
        return power(n, m) / pn;
    }

    const std::vector<double>& raw() const { return p_; }

private:
    std::size_t n_, m_;
    std::vector<double> p_;
};

/// Minimum-rate contract: every user must reach min_rate(n,m) bits/s in a
/// band of `bandwidth` Hz. The equivalent SINR floor is 2^(rate/W) - 1.
class RateRequirements {
public:
    RateRequirements(std::size_t num_waveguides, std::size_t users_per_waveguide,
                     std::vector<double> min_rates, double bandwidth)
        : n_(num_waveguides), m_(users_per_waveguide),
          rates_(std::move(min_rates)), bandwidth_(bandwidth) {
        if (rates_.size() != n_ * m_) throw std::invalid_argument("RateRequirements: need N*M rates");
        if (!(bandwidth_ > 0.0)) throw std::invalid_argument("RateRequirements: bandwidth must be > 0");
        for (double r : rates_)
            if (!(r > 0.0) || !std::isfinite(r))
                throw std::invalid_argument("RateRequirements: rates must be finite and > 0");
    }

    static RateRequirements uniform(std::size_t num_waveguides, std::size_t users_per_waveguide,
                                    double min_rate, double bandwidth) {
        return RateRequirements(num_waveguides, users_per_waveguide,
                                std::vector<double>(num_waveguides * users_per_waveguide, min_rate),
                                bandwidth);
    }

    std::size_t num_waveguides() const { return n_; }
    std::size_t users_per_waveguide() const { return m_; }
    double bandwidth() const { return bandwidth_; }
    double min_rate(std::size_t n, std::size_t m) const { return rates_[n * m_ + m]; }
    double sinr_target(std::size_t n, std::size_t m) const {
        return std::exp2(min_rate(n, m) / bandwidth_) - 1.0;
    }

private:
    std::size_t n_, m_;
    std::vector<double> rates_;
    double bandwidth_;
};

/// Successive-decoding order of one waveguide: user_at_rank[0] is decoded
/// first (sees all later-ranked users as interference), user_at_rank[M-1]
/// last (interference-free within the waveguide).
struct DecodingOrder {
    std::vector<std::size_t> user_at_rank;
};

struct SolverOptions {
    std::size_t max_iterations = 100;
    double tolerance = 1e-10;     // max relative per-user power change
    double initial_power = 1e-9;  // uniform initial per-user power, W
    std::vector<double> power_caps; // per-waveguide caps; empty = unbounded

    void validate(std::size_t num_waveguides) const {
        if (max_iterations < 1) throw std::invalid_argument("SolverOptions: max_iterations must be >= 1");
        if (!(tolerance > 0.0)) throw std::invalid_argument("SolverOptions: tolerance must be > 0");
        if (!(initial_power > 0.0)) throw std::invalid_argument("SolverOptions: initial power must be > 0");
        if (!power_caps.empty() && power_caps.size() != 1 && power_caps.size() != num_waveguides)
            throw std::invalid_argument("SolverOptions: need one cap per waveguide (or one broadcast cap)");
        for (double c : power_caps)
            if (!(c > 0.0)) throw std::invalid_argument("SolverOptions: caps must be > 0");
    }

    double cap(std::size_t n) const {
        if (power_caps.empty()) return std::numeric_limits<double>::infinity();
        return power_caps.size() == 1 ? power_caps[0] : power_caps[n];
    }
};

enum class TerminationReason { tolerance, max_iterations };

struct ConvergenceReport {
    std::size_t iterations_used = 0;
    std::vector<double> total_power_trace;           // one entry per full pass
    TerminationReason terminated_by = TerminationReason::max_iterations;
    std::vector<DecodingOrder> final_orders;
    bool feasible = false;
};

/// Normalized inter-waveguide interference plus noise seen by user (n,m):
/// the powers of every user on every other waveguide, weighted by their
/// normalized cross gains, plus the user's normalized noise floor.
inline double iin(const ChannelTable& table, const AllocationState& state,
                  std::size_t n, std::size_t m) {
    double v = table.normalized_noise(n, m);
    for (std::size_t np = 0; np < table.num_waveguides(); ++np) {
        if (np == n) continue;
        for (std::size_t i = 0; i < table.users_per_waveguide(); ++i)
            v += table.normalized_cross_gain_sq(np, n, i, m) * state.power(np, i);
    }
    return v;
}

/// Normalized signal-to-inter-waveguide-interference-plus-noise ratio of user
/// (n,m) under `state`. Intra-waveguide interference is deliberately absent:
/// the ratio compares users of one waveguide before a decoding order exists.
inline double nsiinr(const ChannelTable& table, const AllocationState& state,
                     std::size_t n, std::size_t m) {
    return state.power(n, m) / iin(table, state, n, m);
}

/// Users of waveguide n sorted by ascending nSIINR of `state`, ties broken by
/// ascending user index.
inline DecodingOrder decoding_order(const ChannelTable& table, const AllocationState& state,
                                    std::size_t n) {
    const std::size_t M = table.users_per_waveguide();
    std::vector<double> metric(M);
    for (std::size_t m = 0; m < M; ++m) metric[m] = nsiinr(table, state, n, m);
    DecodingOrder order;
    order.user_at_rank.resize(M);
    std::iota(order.user_at_rank.begin(), order.user_at_rank.end(), std::size_t{0});
    std::stable_sort(order.user_at_rank.begin(), order.user_at_rank.end(),
                     [&](std::size_t a, std::size_t b) { return metric[a] < metric[b]; });
    return order;
}

/// Operational ordering used by the solver and the evaluators: users sorted
/// by descending interference-plus-noise (worst conditions decoded first),
/// ties broken by ascending user index. Depends only on the powers of OTHER
/// waveguides, so it coincides with the ascending-nSIINR order whenever the
/// users of waveguide n hold equal powers (e.g. under a uniform start), and
/// it is the total-power-optimal order for the back-substitution below.
inline DecodingOrder interference_order(const ChannelTable& table, const AllocationState& state,
                                        std::size_t n) {
    const std::size_t M = table.users_per_waveguide();
    std::vector<double> v(M);
    for (std::size_t m = 0; m < M; ++m) v[m] = iin(table, state, n, m);
    DecodingOrder order;
    order.user_at_rank.resize(M);
    std::iota(order.user_at_rank.begin(), order.user_at_rank.end(), std::size_t{0});
    std::stable_sort(order.user_at_rank.begin(), order.user_at_rank.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return order;
}

/// SINR and achieved rate of the user at `rank` of waveguide n under the
/// given decoding order: its own power over the powers of all later-ranked
/// users of the same waveguide plus its IIN.
inline std::pair<double, double> sinr_and_rate(const ChannelTable& table, const AllocationState& state,
                                               const DecodingOrder& order, double bandwidth,
                                               std::size_t n, std::size_t rank) {
    const std::size_t M = table.users_per_waveguide();
    if (order.user_at_rank.size() != M || rank >= M)
        throw std::invalid_argument("sinr_and_rate: bad order or rank");
    const std::size_t user = order.user_at_rank[rank];
    double intra = 0.0;
    for (std::size_t j = rank + 1; j < M; ++j) intra += state.power(n, order.user_at_rank[j]);
    const double sinr = state.power(n, user) / (intra + iin(table, state, n, user));
    return {sinr, bandwidth * std::log2(1.0 + sinr)};
}

/// Minimum per-user powers of waveguide n that meet every rate floor with
/// equality, given the other waveguides' powers and a decoding order.
/// Back-substitution from the last-decoded rank down:
///   p(rank M)   = target * IIN
///   p(rank m)   = target * (sum of later-ranked powers + IIN)
/// Returned indexed by user (not by rank).
inline std::vector<double> waveguide_min_powers(const ChannelTable& table,
                                                const AllocationState& external,
                                                const DecodingOrder& order,
                                                const RateRequirements& requirements,
                                                std::size_t n) {
    const std::size_t M = table.users_per_waveguide();
    if (order.user_at_rank.size() != M)
        throw std::invalid_argument("waveguide_min_powers: order size mismatch");
    std::vector<double> p(M, 0.0);
    double later = 0.0;
    for (std::size_t rank = M; rank-- > 0;) {
        const std::size_t user = order.user_at_rank[rank];
        p[user] = requirements.sinr_target(n, user) * (later + iin(table, external, n, user));
        later += p[user];
    }
    return p;
}

struct SolveResult {
    AllocationState state;
    ConvergenceReport report;
};

/// Fixed-point iteration for the minimum-total-power allocation.
///
/// Each pass sweeps the waveguides in index order; for each one it re-derives
/// the decoding order from the freshest other-waveguide powers and
/// back-substitutes the minimum powers. The per-user update is a standard
/// interference function (positive, monotone, scalable), so the iteration
/// converges to the unique fixed point whenever one exists. The sweep
/// terminates when the largest relative per-user change drops to `tolerance`
/// or after `max_iterations` passes.
///
/// Caps are not projected onto; a cap violated at the fixed point (or a
/// failure to converge) is reported as infeasibility.
inline SolveResult fixed_point_solve(const ChannelTable& table, const RateRequirements& requirements,
                                     const SolverOptions& options = {}) {
    const std::size_t N = table.num_waveguides();
    const std::size_t M = table.users_per_waveguide();
    if (requirements.num_waveguides() != N || requirements.users_per_waveguide() != M)
        throw std::invalid_argument("fixed_point_solve: requirements shape mismatch");
    options.validate(N);

    AllocationState state(N, M, options.initial_power);
    ConvergenceReport report;

    std::vector<double> previous(N * M);
    for (std::size_t t = 1; t <= options.max_iterations; ++t) {
        previous = state.raw();
        for (std::size_t n = 0; n < N; ++n) {
            const DecodingOrder order = interference_order(table, state, n);
            const std::vector<double> p = waveguide_min_powers(table, state, order, requirements, n);
            for (std::size_t m = 0; m < M; ++m) state.set_power(n, m, p[m]);
        }
        for (double v : state.raw())
            if (!std::isfinite(v))
                throw numerical_failure_error("fixed_point_solve: non-finite power at iteration " +
                                              std::to_string(t));
        report.total_power_trace.push_back(state.total_power());
        report.iterations_used = t;

        double max_rel = 0.0;
        for (std::size_t k = 0; k < N * M; ++k)
            max_rel = std::max(max_rel, std::abs(state.raw()[k] - previous[k]) / previous[k]);
        if (max_rel <= options.tolerance) {
            report.terminated_by = TerminationReason::tolerance;
            break;
        }
    }

    report.final_orders.reserve(N);
    for (std::size_t n = 0; n < N; ++n)
        report.final_orders.push_back(interference_order(table, state, n));

    report.feasible = report.terminated_by == TerminationReason::tolerance;
    for (std::size_t n = 0; n < N && report.feasible; ++n)
        if (state.waveguide_power(n) > options.cap(n)) report.feasible = false;

    return {std::move(state), std::move(report)};
}

/// Constraint audit of an arbitrary allocation, with orders and rates
/// recomputed from scratch.
struct SolutionCheck {
    std::vector<double> achieved_rates;                     // N*M, bits/s
    double max_rate_shortfall_rel = 0.0;                    // max over users of (required - achieved)+/required
    std::vector<std::pair<std::size_t, std::size_t>> violating_users;
    double max_coefficient_residual = 0.0;                  // max |sum_m alpha - 1| over active waveguides
    bool coefficients_in_range = true;                      // 0 <= alpha <= 1
    std::vector<double> cap_margins;                        // cap - P_n (empty when uncapped)
    std::vector<DecodingOrder> orders;
};

inline SolutionCheck evaluate_solution(const ChannelTable& table, const AllocationState& state,
                                       const RateRequirements& requirements,
                                       const std::vector<double>& power_caps = {},
                                       double violation_rel_tol = 1e-9) {
    const std::size_t N = table.num_waveguides();
    const std::size_t M = table.users_per_waveguide();
    SolutionCheck check;
    check.achieved_rates.assign(N * M, 0.0);
    check.orders.reserve(N);

    for (std::size_t n = 0; n < N; ++n) {
        DecodingOrder order = interference_order(table, state, n);
        for (std::size_t rank = 0; rank < M; ++rank) {
            const std::size_t user = order.user_at_rank[rank];
            const auto [sinr, rate] = sinr_and_rate(table, state, order, requirements.bandwidth(), n, rank);
            (void)sinr;
            check.achieved_rates[n * M + user] = rate;
            const double required = requirements.min_rate(n, user);
            const double shortfall = (required - rate) / required;
            check.max_rate_shortfall_rel = std::max(check.max_rate_shortfall_rel, shortfall);
            if (shortfall > violation_rel_tol) check.violating_users.emplace_back(n, user);
        }
        check.orders.push_back(std::move(order));

        const double pn = state.waveguide_power(n);
        if (pn > 0.0) {
            double alpha_sum = 0.0;
            for (std::size_t m = 0; m < M; ++m) {
                const double alpha = state.power(n, m) / pn;
                alpha_sum += alpha;
                if (alpha < 0.0 || alpha > 1.0) check.coefficients_in_range = false;
            }
            check.max_coefficient_residual =
                std::max(check.max_coefficient_residual, std::abs(alpha_sum - 1.0));
        }
        if (!power_caps.empty()) {
            const double cap = power_caps.size() == 1 ? power_caps[0] : power_caps.at(n);
            check.cap_margins.push_back(cap - pn);
        }
    }
    return check;
}

} // namespace pinchpower

#endif
