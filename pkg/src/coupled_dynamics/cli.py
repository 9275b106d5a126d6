"""Command-line front end: `cdl` with subcommands de, simulate, stationary,
theorem1, bifurcation, threshold-sc.

Parameters may come from a flat JSON config (--config); explicit flags
override config values, which override built-in defaults.  All file output
goes under --out.  Floats are printed with 17 significant digits so CSV
output round-trips and identical configs produce byte-identical files.
Exit codes: 0 success, 1 domain or numeric failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bifurcation as bif
from . import de as de_mod
from . import pde, potentials, stationary

_S = argparse.SUPPRESS


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _write_csv(path: Path, header: str, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in str(text).split(",") if tok != ""]


def _merge(args: argparse.Namespace, defaults: dict) -> dict:
    params = dict(defaults)
    given = vars(args)
    config_path = given.pop("config", None)
    if config_path:
        with open(config_path) as fh:
            loaded = json.load(fh)
        for key, value in loaded.items():
            params[key.replace("-", "_")] = value
    params.update(given)
    return params


def _make_spec(p: dict) -> potentials.Potential:
    family = p.get("family", "dw")
    if family == "dw":
        return potentials.DoubleWell(float(p.get("h", 0.0)))
    if family == "ldpc":
        return potentials.LdpcBec(
            epsilon=float(p["eps"]), dv=int(p["dv"]), dc=int(p["dc"])
        )
    raise ValueError(f"unknown family {family!r} (expected 'dw' or 'ldpc')")


def _resolve_y0(token, pts: potentials.StationaryPointSet) -> float:
    if token == "minus":
        return pts.y_minus
    if token == "plus":
        return pts.y_plus
    return float(token)


def cmd_de(args: argparse.Namespace) -> int:
    p = _merge(args, {"y0": 1.0, "max_iter": 100_000})
    dv, dc = int(p["dv"]), int(p["dc"])
    if dv < 2 or dc < 2:
        raise ValueError(f"degrees must be >= 2, got dv={dv}, dc={dc}")
    if p.get("threshold"):
        value = de_mod.bp_threshold(dv, dc, tol=float(p.get("tol", 1e-4)))
        print(f"bp_threshold {_fmt(value)}")
        if p.get("out"):
            _write_csv(Path(p["out"]) / "threshold.csv", "dv,dc,threshold", [(dv, dc, value)])
        return 0
    if "eps" not in p:
        raise ValueError("either --eps or --threshold is required")
    eps = float(p["eps"])
    spec = potentials.LdpcBec(epsilon=eps, dv=dv, dc=dc)
    traj = de_mod.run_de(
        spec,
        y0=float(p["y0"]),
        max_iter=int(p["max_iter"]),
        tol=float(p.get("tol", 1e-12)),
    )
    print(f"fixed_point {_fmt(traj.fixed_point)} after {len(traj.iterates) - 1} iterations"
          f" converged={traj.converged}")
    if p.get("out"):
        rows = [(t, float(y)) for t, y in enumerate(traj.iterates)]
        _write_csv(Path(p["out"]) / "de_trajectory.csv", "t,y", rows)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    p = _merge(
        args,
        {
            "family": "dw",
            "d": 0.01,
            "xmax": 1.0,
            "n": 201,
            "y0": "minus",
            "t_end": 2e4,
            "steady_tol": 1e-9,
            "snapshots": 100,
        },
    )
    if float(p["d"]) <= 0:
        raise ValueError(f"coupling constant must be positive, got {p['d']}")
    spec = _make_spec(p)
    grid = pde.Grid(float(p["xmax"]), int(p["n"]))
    pts = potentials.find_stationary_points(spec)
    y0 = _resolve_y0(p["y0"], pts)
    profile0 = pde.Profile.uniform(grid, y0, boundary_value=pts.y_plus)
    out = p.get("out")
    record = pde.integrate(
        profile0,
        spec,
        pde.ConstantCoupling(float(p["d"])),
        t_end=float(p["t_end"]),
        steady_tol=float(p["steady_tol"]),
        snapshot_every=int(p["snapshots"]),
        keep_snapshots=bool(out),
    )
    classification = stationary.classify_profile(record.final, pts.y_plus)
    print(f"classification {classification} residual {_fmt(record.residual)}"
          f" steady={record.steady} t={_fmt(record.t_final)}")
    if out:
        out_dir = Path(out)
        for t, prof in record.snapshots:
            rows = list(zip(prof.grid.x, prof.values))
            _write_csv(out_dir / f"profile_t{t:.6f}.csv", "x,y", rows)
        _write_csv(out_dir / "energy.csv", "t,H", record.energies)
    return 0


def cmd_stationary(args: argparse.Namespace) -> int:
    p = _merge(
        args,
        {"family": "dw", "d": 0.01, "xmax": 1.0, "n": 201, "t_cap": 2e4},
    )
    spec = _make_spec(p)
    grid = pde.Grid(float(p["xmax"]), int(p["n"]))
    pts = potentials.find_stationary_points(spec)
    y0 = _resolve_y0(p.get("y0", "minus"), pts)
    sol = stationary.solve_stationary(
        spec, float(p["d"]), grid=grid, y0=y0, t_cap=float(p["t_cap"])
    )
    print(
        f"classification {sol.classification} residual {_fmt(sol.residual)}"
        f" C {_fmt(sol.first_integral_constant)} steady={sol.steady}"
    )
    if p.get("out"):
        rows = list(zip(sol.profile.grid.x, sol.profile.values))
        _write_csv(Path(p["out"]) / "stationary_profile.csv", "x,y", rows)
    return 0


def cmd_theorem1(args: argparse.Namespace) -> int:
    p = _merge(
        args,
        {"family": "dw", "d": "0.001,0.01,0.1", "xmax": 1.0, "n": 201, "t_cap": 2e4},
    )
    spec = _make_spec(p)
    grid = pde.Grid(float(p["xmax"]), int(p["n"]))
    d_list = _floats(p["d"])
    y0_list = _floats(p["y0"]) if "y0" in p else None
    report = stationary.verify_no_pot_shape(
        spec, d_list, y0_list=y0_list, grid=grid, t_cap=float(p["t_cap"])
    )
    for cell in report.cells:
        print(
            f"d={_fmt(cell.d)} y0={_fmt(cell.y0)} {cell.classification}"
            f" residual={_fmt(cell.residual)}"
        )
    print(f"orientation {report.orientation} passed={report.passed}")
    if p.get("out"):
        rows = [
            (c.d, c.y0, c.classification, c.residual, c.first_integral_constant)
            for c in report.cells
        ]
        _write_csv(Path(p["out"]) / "theorem1_report.csv", "d,y0,classification,residual,C", rows)
    return 0 if report.passed else 1


def cmd_bifurcation(args: argparse.Namespace) -> int:
    p = _merge(
        args,
        {"xmax": 1.0, "n": 201, "t_cap": bif.DEFAULT_T_CAP, "tol": 1e-4, "jobs": None},
    )
    grid = pde.Grid(float(p["xmax"]), int(p["n"]))
    jobs = p.get("jobs")
    if jobs is None:
        jobs = int(os.environ.get("CDL_JOBS", "1"))
    jobs = int(jobs)
    d_default, h_default = bif.default_sweep_box()
    d_values = _floats(p["d"]) if "d" in p else list(d_default)
    h_values = _floats(p["h"]) if "h" in p else list(h_default)
    cells = bif.sweep(
        d_values, h_values, grid=grid, t_cap=float(p["t_cap"]), jobs=jobs
    )
    out = p.get("out")
    if out:
        rows = [
            (c.d, c.h, c.error if c.classification is None else c.classification, c.t_exit)
            for c in cells
        ]
        _write_csv(Path(out) / "bifurcation_sweep.csv", "d,h,classification,t_exit", rows)
    n_pot = sum(1 for c in cells if c.classification == stationary.POT_SHAPED)
    print(f"{len(cells)} cells, {n_pot} pot-shaped")
    if p.get("curve"):
        bracket = _floats(p["h_bracket"]) if "h_bracket" in p else [-0.3, -1e-3]
        curve = bif.critical_curve(
            d_values,
            h_bracket=(bracket[0], bracket[1]),
            tol=float(p["tol"]),
            grid=grid,
            t_cap=float(p["t_cap"]),
        )
        for pt in curve:
            print(f"d={_fmt(pt.d)} h_crit={_fmt(pt.h_crit)}"
                  + (f" error={pt.error}" if pt.error else ""))
        if out:
            _write_csv(
                Path(out) / "critical_curve.csv",
                "d,h_crit",
                [(pt.d, pt.h_crit) for pt in curve if pt.error is None],
            )
    return 0


def cmd_threshold_sc(args: argparse.Namespace) -> int:
    p = _merge(args, {"family": "dw", "tol": 1e-10})
    bracket = p["bracket"]
    if isinstance(bracket, str):
        bracket = _floats(bracket)
    family = p["family"]
    if family == "dw":
        make = potentials.DoubleWell
    elif family == "ldpc":
        dv, dc = int(p["dv"]), int(p["dc"])
        make = lambda eps: potentials.LdpcBec(epsilon=eps, dv=dv, dc=dc)
    else:
        raise ValueError(f"unknown family {family!r}")
    value = potentials.equal_height_parameter(make, bracket, tol=float(p["tol"]))
    print(f"threshold_sc {_fmt(value)}")
    if p.get("out"):
        _write_csv(Path(p["out"]) / "threshold_sc.csv", "family,value", [(family, value)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdl",
        description="Spatially-coupled gradient-flow simulator and threshold analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", default=None, help="flat JSON config file")
        sp.add_argument("--out", default=_S, help="output directory for CSV files")

    sp = sub.add_parser("de", help="density-evolution recursion / BP threshold")
    add_common(sp)
    sp.add_argument("--dv", type=int, required=True, default=_S)
    sp.add_argument("--dc", type=int, required=True, default=_S)
    sp.add_argument("--eps", type=float, default=_S)
    sp.add_argument("--threshold", action="store_true", default=_S)
    sp.add_argument("--tol", type=float, default=_S)
    sp.add_argument("--y0", type=float, default=_S)
    sp.add_argument("--max-iter", dest="max_iter", type=int, default=_S)
    sp.set_defaults(func=cmd_de)

    sp = sub.add_parser("simulate", help="time integration of the coupled system")
    add_common(sp)
    sp.add_argument("--family", choices=["dw", "ldpc"], default=_S)
    sp.add_argument("--h", type=float, default=_S)
    sp.add_argument("--eps", type=float, default=_S)
    sp.add_argument("--dv", type=int, default=_S)
    sp.add_argument("--dc", type=int, default=_S)
    sp.add_argument("--d", type=float, default=_S)
    sp.add_argument("--xmax", type=float, default=_S)
    sp.add_argument("--n", type=int, default=_S)
    sp.add_argument("--y0", default=_S, help="minus | plus | numeric value")
    sp.add_argument("--t-end", dest="t_end", type=float, default=_S)
    sp.add_argument("--steady-tol", dest="steady_tol", type=float, default=_S)
    sp.add_argument("--snapshots", type=int, default=_S, help="snapshot cadence in steps")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("stationary", help="relax to a stationary solution and classify")
    add_common(sp)
    sp.add_argument("--family", choices=["dw", "ldpc"], default=_S)
    sp.add_argument("--h", type=float, default=_S)
    sp.add_argument("--eps", type=float, default=_S)
    sp.add_argument("--dv", type=int, default=_S)
    sp.add_argument("--dc", type=int, default=_S)
    sp.add_argument("--d", type=float, default=_S)
    sp.add_argument("--xmax", type=float, default=_S)
    sp.add_argument("--n", type=int, default=_S)
    sp.add_argument("--y0", default=_S)
    sp.add_argument("--t-cap", dest="t_cap", type=float, default=_S)
    sp.set_defaults(func=cmd_stationary)

    sp = sub.add_parser("theorem1", help="no-pot-shape verification sweep")
    add_common(sp)
    sp.add_argument("--family", choices=["dw", "ldpc"], default=_S)
    sp.add_argument("--h", type=float, default=_S)
    sp.add_argument("--eps", type=float, default=_S)
    sp.add_argument("--dv", type=int, default=_S)
    sp.add_argument("--dc", type=int, default=_S)
    sp.add_argument("--d", default=_S, help="comma list of coupling constants")
    sp.add_argument("--y0", default=_S, help="comma list of initial values")
    sp.add_argument("--xmax", type=float, default=_S)
    sp.add_argument("--n", type=int, default=_S)
    sp.add_argument("--t-cap", dest="t_cap", type=float, default=_S)
    sp.set_defaults(func=cmd_theorem1)

    sp = sub.add_parser("bifurcation", help="(d, h) sweep and critical curve")
    add_common(sp)
    sp.add_argument("--d", default=_S, help="comma list of coupling constants")
    sp.add_argument("--h", default=_S, help="comma list of tilts")
    sp.add_argument("--curve", action="store_true", default=_S)
    sp.add_argument("--h-bracket", dest="h_bracket", default=_S, help="comma pair")
    sp.add_argument("--tol", type=float, default=_S)
    sp.add_argument("--xmax", type=float, default=_S)
    sp.add_argument("--n", type=int, default=_S)
    sp.add_argument("--t-cap", dest="t_cap", type=float, default=_S)
    sp.add_argument("--jobs", type=int, default=_S)
    sp.set_defaults(func=cmd_bifurcation)

    sp = sub.add_parser("threshold-sc", help="equal-height (Maxwell) threshold")
    add_common(sp)
    sp.add_argument("--family", choices=["dw", "ldpc"], default=_S)
    sp.add_argument("--dv", type=int, default=_S)
    sp.add_argument("--dc", type=int, default=_S)
    sp.add_argument("--bracket", nargs=2, type=float, required=True, default=_S)
    sp.add_argument("--tol", type=float, default=_S)
    sp.set_defaults(func=cmd_threshold_sc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func = args.func
    del args.command, args.func
    try:
        return func(args)
    except (
        ValueError,
        KeyError,
        potentials.DomainError,
        potentials.BracketingError,
        potentials.TopologyChangeError,
        stationary.HypothesisError,
        stationary.NotSteadyError,
        stationary.ReconstructionInfeasibleError,
        pde.DivergenceError,
        FileNotFoundError,
    ) as exc:
        msg = f"missing required parameter {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
