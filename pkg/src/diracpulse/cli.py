"""Command line experiment runner.

    diracpulse extract CONFIG       single pulse run (f or delta_target)
    diracpulse scan-f CONFIG        energy change over pulse.f_list
    diracpulse verify CONFIG        oracle and invariant suite (n_points <= 64)
    diracpulse convergence CONFIG   integrator vs closed-form pulse

Exit codes: 0 ok, 1 verification failure, 2 prediction mismatch or
non-asymptotic convergence, 3 configuration error, 4 no extraction possible.
"""
import argparse
import csv
import os
import sys
import warnings

import numpy as np

from . import oracle
from .config import ConfigError, load_config
from .dirac import DiracParams, free_propagate, make_gaussian_packet, make_plane_wave
from .evolve import IntegratorConfig, RampSpec, convergence_study, run
from .grid import make_grid
from .pulse import (ExtractionImpossibleError, ResolutionWarning, apply_pulse,
                    chi_from_current, divergence_power, f_for_target, run_extraction)
from .svgplot import line_plot, write_svg
from .verification import run_checks

EXIT_OK, EXIT_VERIFY, EXIT_MISMATCH, EXIT_CONFIG, EXIT_NO_EXTRACTION = 0, 1, 2, 3, 4

SCAN_FIELDS = ["f", "delta_measured", "delta_gradient", "delta_divergence", "delta_quadratic",
               "rel_err_divergence", "energy_before", "energy_after", "neg_branch_after",
               "tail_fraction_after", "warnings"]
CONVERGENCE_FIELDS = ["n_steps", "dt", "l2_error", "order"]
# relative tolerance on the fitted energy-vs-f slope
SLOPE_TOL = 1e-8
ORDER_BAND = (1.8, 2.2)


def fmt(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(path, fields, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(fields)
        for row in rows:
            writer.writerow([fmt(row[k]) for k in fields])


def _output_path(configured, default_name, out_dir):
    name = configured if configured is not None else default_name
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        return os.path.join(out_dir, os.path.basename(name))
    return name


def build_state(cfg):
    """(grid, params, initial state) from a parsed config; raises ValueError on bad physics."""
    grid = make_grid(cfg.n_points, cfg.length)
    p = DiracParams(cfg.mass, cfg.charge)
    if cfg.kind == "gaussian":
        psi = make_gaussian_packet(grid, cfg.k0, cfg.sigma_x, cfg.packet_center, cfg.branch, p)
    else:
        n = cfg.mode_index
        if n is None:
            n = int(round(cfg.k0 * cfg.length / (2 * np.pi)))
            if abs(2 * np.pi * n / cfg.length - cfg.k0) > 1e-9 * max(1.0, abs(cfg.k0)):
                raise ValueError(f"plane wave k0={cfg.k0} is not a grid momentum; "
                                 f"set packet.mode_index")
        psi = make_plane_wave(grid, n, cfg.branch, p)
    return grid, p, psi


def scan_row(result):
    return {
        "f": result.f,
        "delta_measured": result.delta_measured,
        "delta_gradient": result.delta_gradient,
        "delta_divergence": result.delta_divergence,
        "delta_quadratic": result.delta_quadratic,
        "rel_err_divergence": result.rel_err_divergence,
        "energy_before": result.energy_before,
        "energy_after": result.energy_after,
        "neg_branch_after": result.report_after.negative_branch,
        "tail_fraction_after": result.tail_fraction_after,
        "warnings": "; ".join(result.warnings),
    }


def _run_quiet(psi, f, cfg, p):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ResolutionWarning)
        return run_extraction(psi, f, cfg.t_a, cfg.t_b, p)


def report_lines(result):
    r = result.report_after
    lines = [
        f"f                       = {result.f:.17g}",
        f"energy before           = {result.energy_before:.17g}",
        f"energy after            = {result.energy_after:.17g}",
        f"  positive branch       = {r.positive_branch:.17g}",
        f"  negative branch       = {r.negative_branch:.17g}",
        f"energy change (measured)= {result.delta_measured:.17g}",
        f"  -int J dchi/dx        = {result.delta_gradient:.17g}",
        f"  int chi dJ/dx         = {result.delta_divergence:.17g}",
        f"  -f int (dJ/dx)^2      = {fmt(result.delta_quadratic)}",
        f"relative mismatch       = {result.rel_err_divergence:.3e}",
        f"tail fraction after     = {result.tail_fraction_after:.3e}",
    ]
    lines += [f"WARNING: {w}" for w in result.warnings]
    return lines


def cmd_extract(cfg, out_dir=None, out=None):
    out = out or sys.stdout
    if cfg.f_list is not None:
        raise ConfigError("extract takes pulse.f or pulse.delta_target, not f_list")
    grid, p, psi = build_state(cfg)
    psi0_ta = free_propagate(psi, cfg.t_a, p)
    f = cfg.f
    if cfg.delta_target is not None:
        f = f_for_target(psi0_ta, cfg.delta_target, p)
        print(f"resolved f = {f:.17g} for target energy change {cfg.delta_target:.17g}", file=out)
    result = _run_quiet(psi, f, cfg, p)
    for line in report_lines(result):
        print(line, file=out)
    if cfg.integrator_enabled:
        chi = chi_from_current(psi0_ta, f, cfg.t_a, p)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ResolutionWarning)
            exact = apply_pulse(psi, chi, p)
        approx = run(psi, chi, RampSpec(cfg.t_a), IntegratorConfig(cfg.n_steps), p)
        print(f"integrator ({cfg.n_steps} steps) vs closed form: L2 = "
              f"{(approx - exact).norm():.3e}", file=out)
    csv_path = _output_path(cfg.csv_path, "extract.csv", out_dir)
    write_csv(csv_path, SCAN_FIELDS, [scan_row(result)])
    print(f"wrote {csv_path}", file=out)
    return EXIT_OK if result.consistent else EXIT_MISMATCH


def cmd_scan_f(cfg, out_dir=None, out=None):
    out = out or sys.stdout
    if cfg.f_list is None:
        raise ConfigError("scan-f needs pulse.f_list")
    grid, p, psi = build_state(cfg)
    psi0_ta = free_propagate(psi, cfg.t_a, p)
    results = [_run_quiet(psi, f, cfg, p) for f in cfg.f_list]
    rows = [scan_row(r) for r in results]
    fs = np.array(cfg.f_list)
    deltas = np.array([r.delta_measured for r in results])
    expected = -divergence_power(psi0_ta, p)
    if len(fs) >= 2:
        slope, intercept = np.polyfit(fs, deltas, 1)
    else:
        slope, intercept = deltas[0] / fs[0], 0.0
    rel = abs(slope - expected) / abs(expected) if expected != 0 else abs(slope)
    print(f"{'f':>12} {'measured':>24} {'-f int(dJ)^2':>24} {'rel err':>10}", file=out)
    for r in results:
        print(f"{r.f:12.6g} {r.delta_measured:24.17g} {r.delta_quadratic:24.17g} "
              f"{r.rel_err_divergence:10.2e}", file=out)
    print(f"fitted slope      = {slope:.17g}", file=out)
    print(f"-int (dJ/dx)^2 dx = {expected:.17g}", file=out)
    print(f"slope rel error   = {rel:.3e}", file=out)
    print(f"intercept         = {intercept:.3e}", file=out)
    for r in results:
        for w in r.warnings:
            print(f"WARNING (f={r.f:g}): {w}", file=out)

    csv_path = _output_path(cfg.csv_path, "scan_f.csv", out_dir)
    svg_path = _output_path(cfg.svg_path, "scan_f.svg", out_dir)
    write_csv(csv_path, SCAN_FIELDS, rows)
    svg = line_plot([("measured", list(fs), list(deltas), False),
                     ("-f int (dJ/dx)^2", list(fs), [r.delta_quadratic for r in results], True)],
                    "Free-field energy change vs pulse strength", "f", "energy change")
    write_svg(svg_path, svg)
    print(f"wrote {csv_path}, {svg_path}", file=out)
    ok = all(r.consistent for r in results) and (expected == 0 or rel <= SLOPE_TOL)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(cfg, out_dir=None, out=None):
    out = out or sys.stdout
    if cfg.n_points > oracle.DENSE_LIMIT:
        raise ConfigError(f"verify runs dense checks; n_points must be <= {oracle.DENSE_LIMIT}, "
                          f"got {cfg.n_points}")
    grid, p, psi = build_state(cfg)
    f = cfg.f
    if cfg.f_list is not None:
        f = cfg.f_list[-1]
    elif cfg.delta_target is not None:
        f = f_for_target(free_propagate(psi, cfg.t_a, p), cfg.delta_target, p)
    checks = run_checks(psi, f, cfg.t_a, cfg.t_b, p)
    for c in checks:
        print(c.line(), file=out)
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=out)
    if failed:
        print("failed: " + ", ".join(c.name for c in failed), file=out)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_convergence(cfg, out_dir=None, out=None):
    out = out or sys.stdout
    if not cfg.integrator_enabled:
        raise ConfigError("convergence needs integrator.enabled = true")
    if cfg.f_list is not None:
        raise ConfigError("convergence takes pulse.f or pulse.delta_target, not f_list")
    grid, p, psi = build_state(cfg)
    psi0_ta = free_propagate(psi, cfg.t_a, p)
    f = cfg.f
    if cfg.delta_target is not None:
        f = f_for_target(psi0_ta, cfg.delta_target, p)
    chi = chi_from_current(psi0_ta, f, cfg.t_a, p)
    study = convergence_study(psi, chi, RampSpec(cfg.t_a), cfg.step_counts, p)
    rows = [{"n_steps": r.n_steps, "dt": r.dt, "l2_error": r.l2_error, "order": r.order}
            for r in study.rows]
    print(f"{'n_steps':>8} {'dt':>12} {'L2 error':>12} {'order':>8}", file=out)
    for r in study.rows:
        order = f"{r.order:8.4f}" if r.order is not None else f"{'-':>8}"
        print(f"{r.n_steps:8d} {r.dt:12.4e} {r.l2_error:12.4e} {order}", file=out)
    csv_path = _output_path(cfg.csv_path, "convergence.csv", out_dir)
    svg_path = _output_path(cfg.svg_path, "convergence.svg", out_dir)
    write_csv(csv_path, CONVERGENCE_FIELDS, rows)
    dts = [r.dt for r in study.rows]
    errs = [r.l2_error for r in study.rows]
    ref = [errs[-1] * (dt / dts[-1]) ** 2 for dt in dts]
    write_svg(svg_path, line_plot([("L2 error", dts, errs, False), ("dt^2 reference", dts, ref, True)],
                                  "Split-operator vs closed-form pulse", "dt", "L2 error",
                                  logx=True, logy=True))
    print(f"wrote {csv_path}, {svg_path}", file=out)
    if study.degenerate:
        print("degenerate study: all errors at roundoff (chi is zero), order undefined", file=out)
        return EXIT_OK
    print(f"fitted order = {study.fitted_order:.4f}", file=out)
    if not study.monotone:
        print("errors are not monotone in dt: pre-asymptotic regime, use more steps", file=out)
        return EXIT_MISMATCH
    if not study.in_band(*ORDER_BAND):
        print(f"fitted order outside {ORDER_BAND}: shrink dt (larger step_counts)", file=out)
        return EXIT_MISMATCH
    return EXIT_OK


COMMANDS = {"extract": cmd_extract, "scan-f": cmd_scan_f,
            "verify": cmd_verify, "convergence": cmd_convergence}


def main(argv=None):
    parser = argparse.ArgumentParser(prog="diracpulse", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("config", help="JSON experiment config")
    parser.add_argument("--out-dir", default=None, help="directory for CSV/SVG outputs")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, for_verify=args.command == "verify")
        return COMMANDS[args.command](cfg, out_dir=args.out_dir)
    except ExtractionImpossibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_EXTRACTION
    except (ConfigError, ValueError, oracle.DenseLimitError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
