#!/usr/bin/env python3
"""Regenerates tests/generated/expected_values.hpp from the reference model."""
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import reference as ref  # noqa: E402

SIGMA2 = 1e-12
F_C = 28e9
W = 10e6


def lit(x):
    return repr(float(x))


def main():
    lam, lam_g, eta = ref.derive_params(F_C)
    out = []
    out.append("// Generated by tests/oracle/generate_expected.py - do not edit by hand.")
    out.append("// Frozen outputs of the independent Python reference model.")
    out.append("#pragma once")
    out.append("")
    out.append("namespace expected {")
    out.append("")
    out.append(f"inline constexpr double wavelength = {lit(lam)};")
    out.append(f"inline constexpr double guided_wavelength = {lit(lam_g)};")
    out.append(f"inline constexpr double path_constant = {lit(eta)};")
    out.append(f"inline constexpr double overhead_gain_sq = {lit(eta / 9.0)};        // single antenna 3 m overhead")
    out.append(f"inline constexpr double overhead_noise = {lit(SIGMA2 * 9.0 / eta)};  // sigma^2 / overhead gain")
    out.append(f"inline constexpr double cross_gain_sq_d20 = {lit(eta / 409.0)};      // |h|^2 at sqrt(409) m")
    out.append("")

    t = ref.Table(2, 2, 20.0, 3.0, F_C, SIGMA2)
    own = ", ".join(lit(t.own[n][m]) for n in range(2) for m in range(2))
    noise = ", ".join(lit(t.noise[n][m]) for n in range(2) for m in range(2))
    out.append("// N=2, M=2, D=20 m, d=3 m, shared-origin feeds; row-major (n, m)")
    out.append(f"inline constexpr double grid22_own_gain_sq[4] = {{{own}}};")
    out.append(f"inline constexpr double grid22_normalized_noise[4] = {{{noise}}};")
    cross_keys = sorted(t.cross.keys())
    keys = ", ".join(f"{{{np_}, {n}, {i}, {m}}}" for np_, n, i, m in cross_keys)
    vals = ", ".join(lit(t.cross[k]) for k in cross_keys)
    out.append(f"inline constexpr unsigned grid22_cross_index[8][4] = {{{keys}}};  // (n', n, i, m)")
    out.append(f"inline constexpr double grid22_cross_gain_sq[8] = {{{vals}}};")
    out.append("")

    ta = ref.Table(2, 2, 20.0, 3.0, F_C, SIGMA2, "per_waveguide_axis")
    out.append("// same grid, per-waveguide-axis feeds")
    out.append(f"inline constexpr double grid22_axis_own_gain_sq_00 = {lit(ta.own[0][0])};")
    out.append("")

    t21 = ref.Table(2, 1, 20.0, 3.0, F_C, SIGMA2)
    g21 = t21.cross[(1, 0, 0, 0)]
    out.append("// symmetric N=2, M=1 instance and its analytic fixed point p = g*sbar/(1-g*gcross)")
    out.append(f"inline constexpr double pair_cross_gain = {lit(g21)};")
    out.append(f"inline constexpr double pair_noise = {lit(t21.noise[0][0])};")
    out.append(f"inline constexpr double pair_fixed_point = {lit(t21.noise[0][0] / (1.0 - g21))};")
    out.append("")

    out.append("// fixed-point totals, sequential sweep, tol 1e-10, start 1e-9 W")
    out.append("// (N, rate Mbps, iterations, total W)")
    rows = []
    for rate in (5e6, 10e6, 15e6):
        for N in (2, 3):
            tt = ref.Table(N, 2, 20.0, 3.0, F_C, SIGMA2)
            p, trace, its, why = ref.solve(tt, ref.mk_gammas(N, 2, rate))
            assert why == "tolerance"
            rows.append((N, rate, its, sum(map(sum, p))))
    body = ",\n    ".join(f"{{{n}, {lit(r)}, {its}, {lit(total)}}}" for n, r, its, total in rows)
    out.append("struct GridTotal { int num_waveguides; double rate; int iterations; double total_w; };")
    out.append(f"inline constexpr GridTotal grid_totals[6] = {{\n    {body}}};")
    out.append("")

    gam22 = ref.mk_gammas(2, 2, 10e6)
    out.append(f"inline constexpr double asymptote_22_10mbps = {lit(ref.asymptote(2, 2, 3.0, eta, SIGMA2, gam22))};")

    P, its, viol = ref.equal_solve(ref.Table(2, 2, 20.0, 3.0, F_C, SIGMA2), ref.mk_gammas(2, 2, 5e6))
    assert viol is None
    out.append(f"inline constexpr double equal_22_5mbps_total = {lit(sum(P))};")
    out.append(f"inline constexpr int equal_22_5mbps_iterations = {its};")
    out.append("")
    out.append("} // namespace expected")
    out.append("")

    here = os.path.dirname(__file__)
    path = os.path.normpath(os.path.join(here, "..", "generated", "expected_values.hpp"))
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        f.write("\n".join(out))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
