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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pinchpower/baselines.hpp"
#include "pinchpower/scenario.hpp"
#include "pinchpower/sweep.hpp"
#include "pinchpower/units.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    double tolerance = -1.0;   // <0: keep config value
    long max_iters = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Scenario file (key = value lines)");
    cmd->add_option("--set", args.overrides, "Override, e.g. --set rate=10Mbps (repeatable)")
        ->take_all();
    cmd->add_option("--tolerance", args.tolerance, "Solver relative tolerance");
    cmd->add_option("--max-iters", args.max_iters, "Solver iteration budget");
}

pinchpower::ScenarioConfig load(const CommonArgs& args) {
    pinchpower::ScenarioConfig cfg = pinchpower::load_config(args.config_path, args.overrides);
    if (args.tolerance > 0.0) cfg.solver.tolerance = args.tolerance;
    if (args.max_iters > 0) cfg.solver.max_iterations = static_cast<std::size_t>(args.max_iters);
    return cfg;
}

std::string format_power(double watts) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10e W (%.4f dBm)", watts, pinchpower::watts_to_dbm(watts));
    return buf;
}

int run_solve(const CommonArgs& args, const std::string& out_path) {
    using namespace pinchpower;
    const ScenarioConfig cfg = load(args);
    const ChannelTable table = make_table(cfg);
    const RateRequirements req = make_requirements(cfg);
    const SolveResult result = fixed_point_solve(table, req, cfg.solver);
    const SolutionCheck check = evaluate_solution(table, result.state, req, cfg.solver.power_caps);

    std::cout << "total_power=" << format_power(result.state.total_power()) << '\n'
              << "iterations=" << result.report.iterations_used << '\n'
              << "terminated_by="
              << (result.report.terminated_by == TerminationReason::tolerance ? "tolerance"
                                                                              : "max_iterations")
              << '\n';
    for (std::size_t n = 0; n < cfg.num_waveguides; ++n) {
        std::cout << "P[" << n + 1 << "]=" << format_power(result.state.waveguide_power(n));
        std::cout << " alpha=[";
        for (std::size_t m = 0; m < cfg.users_per_waveguide; ++m)
            std::cout << (m ? " " : "") << result.state.coefficient(n, m);
        std::cout << "]\n";
    }
    std::cout << "max_rate_shortfall_rel=" << check.max_rate_shortfall_rel << '\n'
              << "feasible=" << (result.report.feasible ? 1 : 0) << '\n';

    // one row per user
    std::ofstream file;
    std::ostream* rows = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitError;
        }
        rows = &file;
    }
    *rows << "waveguide,user,rank,power_w,alpha,achieved_rate_bps,min_rate_bps\n";
    for (std::size_t n = 0; n < cfg.num_waveguides; ++n) {
        const DecodingOrder& order = check.orders[n];
        for (std::size_t rank = 0; rank < cfg.users_per_waveguide; ++rank) {
            const std::size_t m = order.user_at_rank[rank];
            char buf[256];
            std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.16e,%.16e,%.16e,%.16e\n", n + 1, m + 1,
                          rank + 1, result.state.power(n, m), result.state.coefficient(n, m),
                          check.achieved_rates[n * cfg.users_per_waveguide + m], req.min_rate(n, m));
            *rows << buf;
        }
    }

    if (!result.report.feasible) {
        if (result.report.terminated_by == TerminationReason::max_iterations) {
            std::cerr << "infeasible: no fixed point within " << cfg.solver.max_iterations
                      << " iterations; the rate floors exceed what the interference allows\n";
        } else {
            for (std::size_t n = 0; n < cfg.num_waveguides; ++n)
                if (result.state.waveguide_power(n) > cfg.solver.cap(n))
                    std::cerr << "infeasible: waveguide " << n + 1 << " needs "
                              << format_power(result.state.waveguide_power(n)) << " above its cap "
                              << format_power(cfg.solver.cap(n)) << '\n';
        }
        return kExitInfeasible;
    }
    return kExitOk;
}

int run_sweep_cmd(const CommonArgs& args, const std::string& sweep_text, const std::string& methods,
                  const std::string& out_path) {
    using namespace pinchpower;
    const ScenarioConfig cfg = load(args);
    SweepSpec spec = parse_sweep_spec(sweep_text);
    spec.methods = parse_methods(methods);
    const std::vector<SweepRow> rows = run_sweep(cfg, spec);

    if (out_path.empty() || out_path == "-") {
        write_sweep_csv(rows, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitError;
        }
        write_sweep_csv(rows, out);
        std::cerr << "wrote " << rows.size() << " rows to " << out_path << '\n';
    }
    return kExitOk;
}

int run_verify(const CommonArgs& args, std::size_t samples, std::uint64_t seed,
               std::size_t grid_points, double upper_bound) {
    using namespace pinchpower;
    const ScenarioConfig cfg = load(args);
    const ChannelTable table = make_table(cfg);
    const RateRequirements req = make_requirements(cfg);
    bool ok = true;

    const StandardPropertyReport props = verify_standard_properties(table, req, samples, seed);
    std::cout << "standard_properties: samples=" << props.samples << " seed=" << props.seed
              << " positivity_failures=" << props.positivity_failures
              << " monotonicity_failures=" << props.monotonicity_failures
              << " scalability_failures=" << props.scalability_failures << '\n';
    if (!props.all_passed()) {
        std::cout << "  first failure: " << props.first_failure << '\n';
        ok = false;
    }

    const SolveResult low = fixed_point_solve(table, req, cfg.solver);
    SolverOptions high_opts = cfg.solver;
    high_opts.initial_power = 1e-2;
    const SolveResult high = fixed_point_solve(table, req, high_opts);
    double init_gap = 0.0;
    for (std::size_t k = 0; k < low.state.raw().size(); ++k)
        init_gap = std::max(init_gap, std::abs(high.state.raw()[k] - low.state.raw()[k]) /
                                          low.state.raw()[k]);
    std::cout << "fixed_point: feasible=" << (low.report.feasible ? 1 : 0)
              << " iterations=" << low.report.iterations_used
              << " two_start_gap_rel=" << init_gap << '\n';
    if (!low.report.feasible || init_gap > 1e-8) ok = false;

    if (cfg.num_waveguides * cfg.users_per_waveguide <= 4) {
        OracleOptions opt;
        opt.grid_points_per_dim = grid_points;
        opt.power_upper_bound = upper_bound;
        const OracleResult oracle = brute_force_min_power(table, req, opt);
        std::cout << "oracle: evaluations=" << oracle.evaluations << " found=" << (oracle.found ? 1 : 0);
        if (oracle.found) {
            const double slack = 2.0 * oracle.grid_resolution *
                                 static_cast<double>(cfg.num_waveguides * cfg.users_per_waveguide);
            const double gap = low.state.total_power() - oracle.best_total_power;
            std::cout << " best_total_w=" << oracle.best_total_power << " solver_minus_oracle=" << gap
                      << " slack=" << slack;
            if (std::abs(gap) > slack) ok = false;
        } else if (low.report.feasible) {
            ok = false; // solver feasible but the search box saw nothing
        }
        std::cout << '\n';
    } else {
        std::cerr << "error: oracle verification needs N*M <= 4 (got "
                  << cfg.num_waveguides * cfg.users_per_waveguide << " users)\n";
        return kExitError;
    }

    std::cout << "verify=" << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitOk : kExitInfeasible;
}

int run_summarize(const std::string& csv_path, double tolerance, double window) {
    using namespace pinchpower;
    std::ifstream in(csv_path);
    if (!in) {
        std::cerr << "error: cannot open '" << csv_path << "'\n";
        return kExitError;
    }
    const std::vector<SweepRow> rows = parse_sweep_csv(in);
    print_summary(summarize(rows, tolerance, window), std::cout);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum transmit power for NOMA users on pinching-antenna waveguides"};
    app.require_subcommand(1);

    CommonArgs solve_args, sweep_args, verify_args;
    std::string solve_out, sweep_out = "-", sweep_text, methods = "proposed", csv_path;
    std::size_t samples = 1000, grid_points = 40;
    std::uint64_t seed = 12345;
    double upper_bound = 1e-3, sum_tolerance = 1e-10, window = 7.0;

    CLI::App* solve = app.add_subcommand("solve", "Solve one scenario and print the allocation");
    add_common(solve, solve_args);
    solve->add_option("--out", solve_out, "Write the per-user CSV here instead of stdout");

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep a parameter and emit CSV");
    add_common(sweep, sweep_args);
    sweep->add_option("--sweep", sweep_text,
                      "PARAM=start:stop:step or PARAM=v1,v2,... "
                      "(iterations, num_waveguides, interval_D, rate_target)")
        ->required();
    sweep->add_option("--methods", methods, "Comma list of proposed,equal,asymptote");
    sweep->add_option("--out", sweep_out, "Output CSV path ('-' for stdout)");

    CLI::App* verify = app.add_subcommand("verify", "Run the property and optimality checks");
    add_common(verify, verify_args);
    verify->add_option("--samples", samples, "Random samples per property");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--grid-points", grid_points, "Search grid points per user");
    verify->add_option("--upper-bound", upper_bound, "Search grid upper power bound, W");

    CLI::App* summarize_cmd = app.add_subcommand("summarize", "Derive metrics from a sweep CSV");
    summarize_cmd->add_option("csv", csv_path, "CSV produced by the sweep subcommand")->required();
    summarize_cmd->add_option("--tolerance", sum_tolerance, "Trace convergence tolerance");
    summarize_cmd->add_option("--window", window, "Envelope window in sweep-parameter units");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve_args, solve_out);
        if (sweep->parsed()) return run_sweep_cmd(sweep_args, sweep_text, methods, sweep_out);
        if (verify->parsed()) return run_verify(verify_args, samples, seed, grid_points, upper_bound);
        if (summarize_cmd->parsed()) return run_summarize(csv_path, sum_tolerance, window);
    } catch (const pinchpower::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
