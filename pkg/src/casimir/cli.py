"""Command-line driver: presets, curve emission, reports, regression mode.

Subcommands
-----------
channels        energy/force curve of a mirror pair (CSV), or the force
                zeros with stability classification (--equilibria, JSON)
separable       energy/force curve of a separable pair (CSV)
waveguide       channel masses of a circular waveguide (JSON)
oracle-compare  determinant energies vs the lattice zero-point oracle (JSON)

Every subcommand takes ``--preset NAME`` or ``--config FILE`` (one JSON
schema for both), ``--out FILE``, and ``--regression`` to re-check all
pinned values instead of running.  Exit codes: 0 success, 1 input error,
2 numerical non-convergence or drift (partial results are still emitted,
flagged per row).

Identical configs produce byte-identical output: quadrature nodes are
fixed and numbers are printed in full round-trip precision.  Curve points
are distributed over worker processes; set CASIMIR_PARALLEL to limit the
degree (absence means one worker per CPU).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .channel_energy import energy, find_equilibria, force
from .config import RunConfig, load_config_file
from .errors import (CasimirError, ClusterOverlapError, ConfigError,
                     LatticeSpecError, QuadratureConvergenceError)
from .lattice import check_resolution, zero_point_energy
from .presets import list_presets, load_preset
from .regression import run_regression
from .scattering import Mirror
from .separable import separable_energy, separable_force
from .waveguide import channel_modes

__all__ = ["main"]

_CSV_HEADER = "x,energy,force,energy_err,force_err,flags"


def _fmt(value: float) -> str:
    return f"{value:.17e}"


def _parallel_degree() -> int:
    env = os.environ.get("CASIMIR_PARALLEL")
    if env is None:
        return os.cpu_count() or 1
    try:
        degree = int(env)
    except ValueError:
        raise ConfigError(f"CASIMIR_PARALLEL must be an integer, got {env!r}")
    return max(1, degree)


def _channel_row(job) -> tuple:
    A, B, cs, x, qspec = job
    try:
        e, e_err = energy(A, B, cs, x, qspec)
        f, f_err = force(A, B, cs, x, qspec)
        return x, e, f, e_err, f_err, ""
    except QuadratureConvergenceError as exc:
        return x, math.nan, math.nan, math.nan, math.nan, f"no-convergence: {exc}"


def _separable_row(job) -> tuple:
    fA, fB, kernel, a, qspec = job
    try:
        e, e_err = separable_energy(fA, fB, kernel, a, qspec)
        f, f_err = separable_force(fA, fB, kernel, a, qspec)
        return a, e, f, e_err, f_err, ""
    except QuadratureConvergenceError as exc:
        return a, math.nan, math.nan, math.nan, math.nan, f"no-convergence: {exc}"


def _map_rows(worker, jobs) -> list[tuple]:
    degree = _parallel_degree()
    if degree == 1 or len(jobs) == 1:
        return [worker(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(degree, len(jobs))) as pool:
        return list(pool.map(worker, jobs))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(rows) -> str:
    lines = [_CSV_HEADER]
    for x, e, f, e_err, f_err, flag in rows:
        lines.append(",".join([_fmt(x), _fmt(e), _fmt(f), _fmt(e_err),
                               _fmt(f_err), flag.replace(",", ";")]))
    return "\n".join(lines) + "\n"


def _run_channels(cfg: RunConfig, out: str | None, equilibria: bool) -> int:
    cs = cfg.channel_set()
    A = cfg.mirror("mirror_a", cs)
    B = cfg.mirror("mirror_b", cs)
    qspec = cfg.quadrature()
    grid = cfg.grid()
    if equilibria:
        probes = int(cfg.raw.get("scan_probes", max(grid.count, 24)))
        report = find_equilibria(A, B, cs, (grid.lo, grid.hi, probes), qspec)
        doc = {
            "model": "channels",
            "scan_range": [grid.lo, grid.hi],
            "zeros": [{"x": z.x, "kind": z.kind.value} for z in report.zeros],
        }
        _emit(json.dumps(doc, indent=2) + "\n", out)
        return 0
    jobs = [(A, B, cs, x, qspec) for x in grid.values()]
    rows = _map_rows(_channel_row, jobs)
    _emit(_rows_to_csv(rows), out)
    return 2 if any(r[5] for r in rows) else 0


def _run_separable(cfg: RunConfig, out: str | None) -> int:
    fA = cfg.form_factor("body_a")
    fB = cfg.form_factor("body_b")
    kernel = cfg.kernel()
    qspec = cfg.quadrature()
    grid = cfg.grid()
    try:
        separable_energy(fA, fB, kernel, grid.lo, qspec)
    except ClusterOverlapError as exc:
        raise ConfigError(f"grid.lo: {exc}") from None
    jobs = [(fA, fB, kernel, a, qspec) for a in grid.values()]
    rows = _map_rows(_separable_row, jobs)
    _emit(_rows_to_csv(rows), out)
    return 2 if any(r[5] for r in rows) else 0


def _run_waveguide(cfg: RunConfig, out: str | None) -> int:
    spec = cfg.waveguide()
    modes = channel_modes(spec)
    doc = {
        "model": "waveguide",
        "radius": spec.radius,
        "max_mass": spec.max_mass,
        "channels": [
            {"mass": md.mass, "m": md.m, "k": md.k,
             "kind": "TM" if md.kind == "J" else "TE",
             "degeneracy": md.degeneracy}
            for md in modes
        ],
    }
    _emit(json.dumps(doc, indent=2) + "\n", out)
    return 0


def _run_oracle_compare(cfg: RunConfig, out: str | None) -> int:
    cs = cfg.channel_set()
    A = cfg.mirror("mirror_a", cs)
    B = cfg.mirror("mirror_b", cs)
    if math.isinf(A.strength) or math.isinf(B.strength):
        raise ConfigError("mirror strength: the oracle comparison needs "
                          "finite strengths")
    lattice = cfg.lattice()
    xs = cfg.separations()
    x_ref = float(cfg.raw.get("x_ref", 0.0))
    if x_ref <= xs[-1]:
        raise ConfigError(f"x_ref: must exceed the largest separation, "
                          f"got {x_ref}")
    max_rel = float(cfg.raw.get("max_rel_diff", 0.02))
    qspec = cfg.quadrature()
    for x in xs:
        check_resolution(lattice, cs, x)

    def b_at(x: float) -> Mirror:
        return Mirror(A.position + x, B.coupling, B.strength)

    zp_ref = zero_point_energy(lattice, cs, [A, b_at(x_ref)])
    e_det_ref = energy(A, B, cs, x_ref, qspec)[0]
    rows = []
    failed = False
    for x in xs:
        e_lat = zero_point_energy(lattice, cs, [A, b_at(x)]) - zp_ref
        e_det = energy(A, B, cs, x, qspec)[0] - e_det_ref
        rel = abs(e_lat - e_det) / abs(e_det)
        flag = "" if rel <= max_rel else f"exceeds {max_rel}"
        failed |= bool(flag)
        rows.append({"x": x, "determinant": e_det, "lattice": e_lat,
                     "rel_diff": rel, "flags": flag})
    doc = {"model": "oracle_compare", "x_ref": x_ref,
           "max_rel_diff": max_rel, "rows": rows}
    _emit(json.dumps(doc, indent=2) + "\n", out)
    return 2 if failed else 0


def _load(args) -> RunConfig:
    if args.preset and args.config:
        raise ConfigError("give either --preset or --config, not both")
    if args.preset:
        return load_preset(args.preset)
    if args.config:
        return load_config_file(args.config)
    raise ConfigError("one of --preset or --config is required "
                      f"(presets: {', '.join(list_presets())})")


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    doc = dict(cfg.raw)
    if getattr(args, "grid", None):
        parts = args.grid.split(":")
        if len(parts) != 4:
            raise ConfigError("--grid: expected LO:HI:N:log|linear")
        doc["grid"] = {"lo": float(parts[0]), "hi": float(parts[1]),
                       "count": int(parts[2]), "spacing": parts[3]}
    if getattr(args, "tol", None) is not None:
        quad = dict(doc.get("quadrature", {}))
        quad["rel_tol"] = args.tol
        doc["quadrature"] = quad
    return RunConfig.from_dict(doc)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir",
        description="Two-body Casimir energies for multi-channel mirrors "
                    "and separable potentials.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
            ("channels", "mirror-pair energy/force curve or equilibria"),
            ("separable", "separable-pair energy/force curve"),
            ("waveguide", "waveguide channel masses"),
            ("oracle-compare", "determinant vs lattice zero-point oracle")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--preset", help="checked-in preset name")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--tol", type=float,
                       help="override quadrature relative tolerance")
        p.add_argument("--regression", action="store_true",
                       help="re-check all pinned values and exit")
        if name == "channels":
            p.add_argument("--equilibria", action="store_true",
                           help="emit the force-zero report instead of a curve")
        if name in ("channels", "separable"):
            p.add_argument("--grid", help="override grid as LO:HI:N:log|linear")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.regression:
            return 0 if run_regression() else 2
        cfg = _apply_overrides(_load(args), args)
        if args.command == "channels":
            if cfg.model != "channels":
                raise ConfigError(f"model: expected 'channels', got {cfg.model!r}")
            return _run_channels(cfg, args.out, args.equilibria)
        if args.command == "separable":
            if cfg.model != "separable":
                raise ConfigError(f"model: expected 'separable', got {cfg.model!r}")
            return _run_separable(cfg, args.out)
        if args.command == "waveguide":
            if cfg.model != "waveguide":
                raise ConfigError(f"model: expected 'waveguide', got {cfg.model!r}")
            return _run_waveguide(cfg, args.out)
        if cfg.model != "oracle_compare":
            raise ConfigError(f"model: expected 'oracle_compare', got {cfg.model!r}")
        return _run_oracle_compare(cfg, args.out)
    except (ConfigError, LatticeSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CasimirError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
