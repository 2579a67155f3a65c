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

#ifndef PINCHPOWER_SWEEP_HPP
#define PINCHPOWER_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pinchpower/scenario.hpp"

namespace pinchpower {

enum class SweepParameter { iterations, num_waveguides, interval_D, rate_target };
enum class Method { proposed, equal, asymptote };

inline std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::iterations: return "iterations";
        case SweepParameter::num_waveguides: return "num_waveguides";
        case SweepParameter::interval_D: return "interval_D";
        case SweepParameter::rate_target: return "rate_target";
    }
    return "?";
}

inline std::string to_string(Method m) {
    switch (m) {
        case Method::proposed: return "proposed";
        case Method::equal: return "equal";
        case Method::asymptote: return "asymptote";
    }
    return "?";
}

struct SweepSpec {
    SweepParameter parameter = SweepParameter::interval_D;
    std::vector<double> values;                 // strictly increasing
    std::vector<Method> methods{Method::proposed};

    void validate() const {
        if (values.empty()) throw config_error("sweep: need at least one value");
        for (std::size_t k = 1; k < values.size(); ++k)
            if (!(values[k] > values[k - 1]))
                throw config_error("sweep: values must be strictly increasing");
        if (methods.empty()) throw config_error("sweep: need at least one method");
        if (parameter == SweepParameter::iterations)
            for (Method m : methods)
                if (m != Method::proposed)
                    throw config_error("sweep: the iterations trace supports only the proposed method");
        if (parameter == SweepParameter::num_waveguides || parameter == SweepParameter::iterations)
            for (double v : values)
                if (!(v >= 1.0) || v != std::floor(v))
                    throw config_error("sweep: " + to_string(parameter) + " values must be integers >= 1");
    }
};

/// Parses "PARAM=start:stop:step" (inclusive of stop within half a step) or
/// "PARAM=v1,v2,...". Values go through parse_quantity, so unit suffixes work.
inline SweepSpec parse_sweep_spec(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw config_error("sweep '" + text + "': expected PARAM=values");
    const std::string name = detail::trim(text.substr(0, eq));
    const std::string rest = detail::trim(text.substr(eq + 1));

    SweepSpec spec;
    if (name == "iterations") spec.parameter = SweepParameter::iterations;
    else if (name == "num_waveguides") spec.parameter = SweepParameter::num_waveguides;
    else if (name == "interval_D") spec.parameter = SweepParameter::interval_D;
    else if (name == "rate_target") spec.parameter = SweepParameter::rate_target;
    else throw config_error("sweep '" + text + "': unknown parameter '" + name +
                            "' (expected iterations, num_waveguides, interval_D or rate_target)");

    spec.values.clear();
    try {
        if (rest.find(':') != std::string::npos) {
            std::istringstream in(rest);
            std::string a, b, c;
            if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
                throw config_error("expected start:stop:step");
            const double start = parse_quantity(a), stop = parse_quantity(b), step = parse_quantity(c);
            if (!(step > 0.0) || stop < start) throw config_error("need stop >= start and step > 0");
            for (double v = start; v <= stop + step * 0.5; v += step) spec.values.push_back(v);
        } else {
            std::istringstream in(rest);
            std::string tok;
            while (std::getline(in, tok, ',')) spec.values.push_back(parse_quantity(tok));
        }
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error("sweep '" + text + "': " + e.what());
    }
    return spec;
}

inline std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> methods;
    std::istringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        const std::string name = detail::trim(tok);
        if (name == "proposed") methods.push_back(Method::proposed);
        else if (name == "equal") methods.push_back(Method::equal);
        else if (name == "asymptote") methods.push_back(Method::asymptote);
        else throw config_error("unknown method '" + name + "' (expected proposed, equal or asymptote)");
    }
    // canonical order, duplicates dropped, so row order never depends on flag order
    std::vector<Method> canonical;
    for (Method m : {Method::proposed, Method::equal, Method::asymptote})
        if (std::find(methods.begin(), methods.end(), m) != methods.end()) canonical.push_back(m);
    if (canonical.empty()) throw config_error("need at least one method");
    return canonical;
}

struct SweepRow {
    double param = 0.0;
    Method method = Method::proposed;
    std::optional<double> total_power_w; // empty when infeasible
    std::size_t iterations = 0;
    bool feasible = false;
};

inline constexpr char kSweepCsvHeader[] = "param,method,total_power_w,total_power_dbm,iterations,feasible";

namespace detail {

inline std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::string format_param(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    for (const auto& row : rows) {
        out << detail::format_param(row.param) << ',' << to_string(row.method) << ',';
        if (row.total_power_w) {
            out << detail::format_sig17(*row.total_power_w) << ','
                << detail::format_sig17(watts_to_dbm(*row.total_power_w));
        } else {
            out << ',';
        }
        out << ',' << row.iterations << ',' << (row.feasible ? 1 : 0) << '\n';
    }
}

inline std::vector<SweepRow> parse_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != kSweepCsvHeader)
        throw config_error("sweep CSV: missing or unexpected header");
    std::vector<SweepRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        std::istringstream fields(line);
        std::string param, method, total, dbm, iters, feasible;
        if (!std::getline(fields, param, ',') || !std::getline(fields, method, ',') ||
            !std::getline(fields, total, ',') || !std::getline(fields, dbm, ',') ||
            !std::getline(fields, iters, ',') || !std::getline(fields, feasible))
            throw config_error("sweep CSV line " + std::to_string(lineno) + ": expected 6 fields");
        SweepRow row;
        try {
            row.param = std::stod(param);
            if (method == "proposed") row.method = Method::proposed;
            else if (method == "equal") row.method = Method::equal;
            else if (method == "asymptote") row.method = Method::asymptote;
            else throw config_error("unknown method '" + method + "'");
            if (!detail::trim(total).empty()) row.total_power_w = std::stod(total);
            row.iterations = static_cast<std::size_t>(std::stoul(iters));
            row.feasible = detail::trim(feasible) == "1";
        } catch (const config_error&) {
            throw;
        } catch (const std::exception& e) {
            throw config_error("sweep CSV line " + std::to_string(lineno) + ": " + e.what());
        }
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline SweepRow solve_row(const ScenarioConfig& cfg, const ChannelTable& table, double param) {
    SweepRow row;
    row.param = param;
    row.method = Method::proposed;
    const RateRequirements req = make_requirements(cfg);
    try {
        const SolveResult result = fixed_point_solve(table, req, cfg.solver);
        row.iterations = result.report.iterations_used;
        // never emit a feasible row whose rates do not actually check out
        const SolutionCheck check = evaluate_solution(table, result.state, req);
        row.feasible = result.report.feasible && check.max_rate_shortfall_rel <= 1e-6;
        if (row.feasible) row.total_power_w = result.state.total_power();
    } catch (const numerical_failure_error&) {
        row.iterations = cfg.solver.max_iterations;
        row.feasible = false;
    }
    return row;
}

inline SweepRow equal_row(const ScenarioConfig& cfg, const ChannelTable& table, double param) {
    SweepRow row;
    row.param = param;
    row.method = Method::equal;
    const RateRequirements req = make_requirements(cfg);
    const BaselineResult result = equal_power_solve(table, req, cfg.solver);
    row.iterations = result.iterations;
    row.feasible = result.feasible;
    if (result.feasible) {
        AllocationState state(cfg.num_waveguides, cfg.users_per_waveguide);
        for (std::size_t n = 0; n < cfg.num_waveguides; ++n)
            for (std::size_t m = 0; m < cfg.users_per_waveguide; ++m)
                state.set_power(n, m, result.waveguide_power[n] / static_cast<double>(cfg.users_per_waveguide));
        const SolutionCheck check = evaluate_solution(table, state, req);
        row.feasible = check.max_rate_shortfall_rel <= 1e-6;
        if (row.feasible) row.total_power_w = result.total_power();
    }
    return row;
}

inline SweepRow asymptote_row(const ScenarioConfig& cfg, double param) {
    SweepRow row;
    row.param = param;
    row.method = Method::asymptote;
    row.total_power_w =
        asymptotic_decoupled_power(make_requirements(cfg), make_params(cfg), cfg.height, cfg.noise_power);
    row.iterations = 0;
    row.feasible = true;
    return row;
}

} // namespace detail

/// Runs the sweep and returns the rows in deterministic order: values
/// ascending, methods in canonical order within each value. Infeasible
/// points keep their row with empty power cells.
inline std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepSpec& spec) {
    spec.validate();
    base.validate();
    std::vector<SweepRow> rows;

    if (spec.parameter == SweepParameter::iterations) {
        // one solve; the trace supplies one row per pass
        const ChannelTable table = make_table(base);
        const RateRequirements req = make_requirements(base);
        const SolveResult result = fixed_point_solve(table, req, base.solver);
        for (double v : spec.values) {
            const auto t = static_cast<std::size_t>(v);
            if (t < 1 || t > result.report.total_power_trace.size()) continue;
            SweepRow row;
            row.param = v;
            row.method = Method::proposed;
            row.total_power_w = result.report.total_power_trace[t - 1];
            row.iterations = t;
            row.feasible = result.report.feasible;
            rows.push_back(row);
        }
        return rows;
    }

    for (double value : spec.values) {
        ScenarioConfig cfg = base;
        switch (spec.parameter) {
            case SweepParameter::num_waveguides:
                cfg.num_waveguides = static_cast<std::size_t>(value);
                cfg.rate_overrides.clear();
                break;
            case SweepParameter::interval_D:
                cfg.spacing = value;
                break;
            case SweepParameter::rate_target:
                cfg.rate = value;
                cfg.rate_overrides.clear();
                break;
            case SweepParameter::iterations:
                break;
        }
        cfg.validate();
        const ChannelTable table = make_table(cfg);
        for (Method m : spec.methods) {
            switch (m) {
                case Method::proposed: rows.push_back(detail::solve_row(cfg, table, value)); break;
                case Method::equal: rows.push_back(detail::equal_row(cfg, table, value)); break;
                case Method::asymptote: rows.push_back(detail::asymptote_row(cfg, value)); break;
            }
        }
    }
    return rows;
}

/// Upper envelope of the local maxima of (param, value) samples, one entry
/// per `window` of param starting at the first local maximum. A window this
/// coarse (default 7) is needed because the per-sample fine structure of a
/// spacing sweep is far below the default 0.25 m grid, so successive raw
/// maxima scatter widely around the underlying envelope.
struct EnvelopeResult {
    std::vector<double> window_start;
    std::vector<double> value;
    bool nonincreasing = true;
};

inline EnvelopeResult local_maxima_envelope(const std::vector<double>& params,
                                            const std::vector<double>& values,
                                            double window = 7.0) {
    if (params.size() != values.size()) throw std::invalid_argument("envelope: size mismatch");
    if (!(window > 0.0)) throw std::invalid_argument("envelope: window must be > 0");
    EnvelopeResult env;
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] >= values[i - 1] && values[i] >= values[i + 1]) maxima.push_back(i);
    if (maxima.empty()) return env;

    const double anchor = params[maxima.front()];
    std::ptrdiff_t bucket = -1;
    for (std::size_t i : maxima) {
        const auto b = static_cast<std::ptrdiff_t>(std::floor((params[i] - anchor) / window));
        if (b != bucket) {
            env.window_start.push_back(anchor + static_cast<double>(b) * window);
            env.value.push_back(values[i]);
            bucket = b;
        } else {
            env.value.back() = std::max(env.value.back(), values[i]);
        }
    }
    for (std::size_t k = 1; k < env.value.size(); ++k)
        if (env.value[k] > env.value[k - 1]) env.nonincreasing = false;
    return env;
}

/// Derived metrics of a sweep CSV. Every section is computed whenever the
/// rows support it; absent data simply leaves a section empty.
struct SweepSummary {
    struct Increase { double from_param, to_param, percent; };
    std::vector<Increase> proposed_increases;        // consecutive proposed rows
    struct Reduction { double param, percent; };
    std::vector<Reduction> reductions;               // proposed vs equal, both feasible
    std::vector<double> params_with_equal_infeasible;
    std::optional<double> asymptote_gap_rel;         // at the largest param with both rows
    EnvelopeResult envelope;
    std::optional<double> first_param_with_step_below_tol;
    std::size_t rows = 0;
};

inline SweepSummary summarize(const std::vector<SweepRow>& rows, double trace_tolerance = 1e-10,
                              double envelope_window = 7.0) {
    SweepSummary s;
    s.rows = rows.size();

    std::vector<const SweepRow*> proposed, equal, asymptote;
    for (const auto& r : rows) {
        if (r.method == Method::proposed) proposed.push_back(&r);
        else if (r.method == Method::equal) equal.push_back(&r);
        else asymptote.push_back(&r);
    }

    for (std::size_t k = 1; k < proposed.size(); ++k) {
        if (!proposed[k - 1]->total_power_w || !proposed[k]->total_power_w) continue;
        const double a = *proposed[k - 1]->total_power_w, b = *proposed[k]->total_power_w;
        s.proposed_increases.push_back({proposed[k - 1]->param, proposed[k]->param, 100.0 * (b - a) / a});
    }

    for (const auto* p : proposed) {
        for (const auto* e : equal) {
            if (e->param != p->param) continue;
            if (!e->feasible || !e->total_power_w) {
                s.params_with_equal_infeasible.push_back(p->param);
            } else if (p->total_power_w) {
                s.reductions.push_back({p->param, 100.0 * (1.0 - *p->total_power_w / *e->total_power_w)});
            }
        }
    }

    for (auto it = proposed.rbegin(); it != proposed.rend() && !s.asymptote_gap_rel; ++it) {
        if (!(*it)->total_power_w) continue;
        for (const auto* a : asymptote)
            if (a->param == (*it)->param && a->total_power_w) {
                s.asymptote_gap_rel = std::abs(*(*it)->total_power_w - *a->total_power_w) / *a->total_power_w;
                break;
            }
    }

    std::vector<double> params, totals;
    for (const auto* p : proposed)
        if (p->total_power_w) {
            params.push_back(p->param);
            totals.push_back(*p->total_power_w);
        }
    s.envelope = local_maxima_envelope(params, totals, envelope_window);

    for (std::size_t k = 1; k < totals.size(); ++k) {
        if (std::abs(totals[k] - totals[k - 1]) / totals[k - 1] <= trace_tolerance) {
            s.first_param_with_step_below_tol = params[k];
            break;
        }
    }
    return s;
}

inline void print_summary(const SweepSummary& s, std::ostream& out) {
    out << "rows=" << s.rows << '\n';
    for (const auto& inc : s.proposed_increases)
        out << "increase_percent[" << detail::format_param(inc.from_param) << "->"
            << detail::format_param(inc.to_param) << "]=" << inc.percent << '\n';
    for (const auto& red : s.reductions)
        out << "reduction_percent[" << detail::format_param(red.param) << "]=" << red.percent << '\n';
    for (double p : s.params_with_equal_infeasible)
        out << "equal_infeasible[" << detail::format_param(p) << "]=1\n";
    if (s.asymptote_gap_rel) out << "asymptote_gap_rel=" << *s.asymptote_gap_rel << '\n';
    if (!s.envelope.value.empty()) {
        for (std::size_t k = 0; k < s.envelope.value.size(); ++k)
            out << "envelope[" << detail::format_param(s.envelope.window_start[k])
                << "]=" << detail::format_sig17(s.envelope.value[k]) << '\n';
        out << "envelope_nonincreasing=" << (s.envelope.nonincreasing ? 1 : 0) << '\n';
    }
    if (s.first_param_with_step_below_tol)
        out << "first_param_with_step_below_tol="
            << detail::format_param(*s.first_param_with_step_below_tol) << '\n';
}

} // namespace pinchpower

#endif
