"""``entangle-net`` command line.

Exit codes: 0 success, 1 validation failure, 2 bad input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import double_jc, multimode, tavis, validation
from .double_jc import ModelParams, PreparedState
from .entanglement import pair_concurrence
from .hilbert import partial_trace
from .scenario import ConfigError, Scenario, load_scenario

EXIT_OK, EXIT_VALIDATION, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
RHO_COLUMNS = [
    "rho_11", "rho_22", "rho_33", "rho_44",
    "rho_14_re", "rho_14_im", "rho_23_re", "rho_23_im",
]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _rho_cells(rho: np.ndarray) -> list[float]:
    return [
        rho[0, 0].real, rho[1, 1].real, rho[2, 2].real, rho[3, 3].real,
        rho[0, 3].real, rho[0, 3].imag, rho[1, 2].real, rho[1, 2].imag,
    ]


def curve_rows(sc: Scenario) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Time grid, concurrences and pair density matrices for a scenario."""
    state = PreparedState(sc.family, sc.alpha, sc.photons)
    if sc.model == "tavis":
        taus = sc.taus()
        if sc.pair == "same":
            rhos = tavis.rho_pair_same_batch(state, taus, sc.omega_over_lambda)
        else:
            rhos = tavis.rho_pair_cross_batch(state, taus, sc.omega_over_lambda)
    elif sc.model == "double_jc":
        taus = sc.taus()
        params = ModelParams(omega=sc.omega_over_lambda, fock_dim=double_jc.fock_dim_for(sc.photons))
        rhos = np.array([double_jc.double_jc_reduced(state, params, t) for t in taus])
    else:
        bath = sc.bath
        n_steps = int(round(bath.t_max / bath.dt))
        if n_steps % (sc.tau_steps - 1):
            raise ConfigError("tau_steps", "tau_steps - 1 must divide bath.t_max / bath.dt")
        taus, full = multimode.lindblad_trajectory(
            state, bath.Gamma, bath.t_max, bath.dt, sample_every=n_steps // (sc.tau_steps - 1)
        )
        keep = [0, 2] if sc.pair == "same" else [0, 3]
        rhos = np.array([partial_trace(r, multimode.QUBIT_LAYOUT, keep) for r in full])
    conc = np.array([pair_concurrence(r) for r in rhos])
    return taus, conc, rhos


def run_curve(sc: Scenario) -> str:
    taus, conc, rhos = curve_rows(sc)
    buf = io.StringIO()
    header = ["tau", "concurrence"] + (RHO_COLUMNS if sc.with_rho else [])
    buf.write(",".join(header) + "\n")
    for t, c, r in zip(taus, conc, rhos):
        cells = [t, c] + (_rho_cells(r) if sc.with_rho else [])
        buf.write(",".join(fmt(x) for x in cells) + "\n")
    return buf.getvalue()


def run_sweep(sc: Scenario, workers: int | None = None, cutoff: float = 1e-6) -> tuple[str, dict]:
    if sc.model != "tavis":
        raise ConfigError("model", "sweeps are defined for the tavis model only")
    grid_deg = np.array(sc.alpha_grid_deg or np.arange(0, 90.0 + 1e-9, 0.5))
    alphas = np.radians(grid_deg)
    res = tavis.min_entanglement_sweep(
        sc.family, alphas, sc.tau_max, sc.tau_steps, sc.photons, workers=workers
    )
    buf = io.StringIO()
    buf.write("alpha_deg,e_min\n")
    for a, e in zip(grid_deg, res.e_min):
        buf.write(f"{fmt(a)},{fmt(e)}\n")
    threshold = tavis.preservation_threshold(
        sc.family, alphas, res.e_min, sc.tau_max, sc.tau_steps, sc.photons, cutoff
    )
    best = int(np.argmax(res.e_min))
    summary = {
        "family": sc.family,
        "photons": sc.photons,
        "tau_max": sc.tau_max,
        "tau_steps": sc.tau_steps,
        "cutoff": cutoff,
        "threshold_alpha_deg": None if threshold is None else math.degrees(threshold),
        "argmax_alpha_deg": float(grid_deg[best]),
        "max_e_min": float(res.e_min[best]),
    }
    return buf.getvalue(), summary


def _matrix_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def run_steady(family: str, alpha_deg: float) -> dict:
    alpha = math.radians(alpha_deg)
    ss = multimode.steady_state_pair(alpha, family)
    return {
        "family": family,
        "alpha_deg": alpha_deg,
        "y": ss.y,
        "x_abs": ss.x_abs,
        "concurrence": multimode.steady_concurrence(alpha, family),
        "rho_same": _matrix_json(ss.rho_same),
        "rho_cross": _matrix_json(ss.rho_cross),
    }


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entangle-net", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", help="concurrence against time for one scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default="-")

    p = sub.add_parser("sweep", help="minimum A1A2 concurrence over a grid of angles")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--summary", default=None)

    p = sub.add_parser("steady", help="long-time pair states of the multimode model")
    p.add_argument("--family", choices=["phi", "psi"], required=True)
    p.add_argument("--alpha-deg", type=float, required=True)
    p.add_argument("--out", default="-")

    p = sub.add_parser("validate", help="run invariant suites")
    p.add_argument("--suite", choices=list(validation.SUITES) + ["all"], default="all")
    p.add_argument("--report", default="-")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "curve":
            _write(run_curve(load_scenario(args.config)), args.out)
        elif args.command == "sweep":
            csv_text, summary = run_sweep(load_scenario(args.config))
            _write(csv_text, args.out)
            if args.summary:
                Path(args.summary).write_text(json.dumps(summary, indent=2) + "\n")
        elif args.command == "steady":
            if not 0 <= args.alpha_deg <= 90:
                raise ConfigError("--alpha-deg", "must lie in [0, 90]")
            _write(json.dumps(run_steady(args.family, args.alpha_deg), indent=2) + "\n", args.out)
        elif args.command == "validate":
            names = validation.SUITES if args.suite == "all" else (args.suite,)
            report = validation.run_suites(names)
            _write(json.dumps(report, indent=2) + "\n", args.report)
            return EXIT_OK if report["passed"] else EXIT_VALIDATION
    except ConfigError as exc:
        print(f"entangle-net: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except multimode.IntegrationError as exc:
        print(f"entangle-net: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
