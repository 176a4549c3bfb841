"""Command-line front end: point evaluations, sweeps, certification, CSV.

Modes:
  point    evaluate one configuration, emit a one-row CSV
  sweep    evaluate a grid over up to two of {theta, separation, temperature,
           bfield}, emit CSV (outer axis slowest, in that listing order)
  certify  compare the series engine against the quadrature oracle on the
           reference grid; exit 0 only if every comparison passes at 1e-6

Exit codes: 0 success, 1 argument errors, 2 convergence or output failure,
3 certification failure.  CHIRAL_CASIMIR_THREADS (positive integer) caps the
number of worker threads used for sweep evaluation; results are byte-identical
regardless of the setting.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import engine, oracle
from .engine import CavityConfig, ReducedPoint, SeriesControl, ZeroModePolicy
from .kernel import MediumKind

__all__ = ["AxisSpec", "SweepSpec", "SweepRow", "SweepTable", "run", "run_sweep", "emit_csv", "main"]

COLUMNS = (
    "theta_rad",
    "theta_eff_rad",
    "separation_m",
    "temperature_K",
    "tau",
    "reduced_free_energy",
    "reduced_pressure",
    "free_energy_J_per_m2",
    "pressure_Pa",
    "terms_used",
    "error_estimate",
    "converged",
)
# --units reduced drops the dimensional columns
REDUCED_COLUMNS = (
    "theta_rad",
    "theta_eff_rad",
    "tau",
    "reduced_free_energy",
    "reduced_pressure",
    "terms_used",
    "error_estimate",
    "converged",
)

_MEDIA = {
    "fixed": MediumKind.FIXED_ANGLE,
    "faraday": MediumKind.FARADAY,
    "optical": MediumKind.OPTICALLY_ACTIVE,
}
_POLICIES = {"full": ZeroModePolicy.FULL, "tm-only": ZeroModePolicy.TM_ONLY}

_CERTIFY_T0_THETAS = (0.0, math.pi / 4, math.pi / 2)
_CERTIFY_TOL = 1e-6


@dataclass(frozen=True)
class AxisSpec:
    """One sweep axis; count == 1 pins the axis at `start`."""

    start: float
    stop: float
    count: int
    log: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("axis endpoints must be finite")
        if self.count < 1:
            raise ValueError(f"axis count must be >= 1, got {self.count!r}")
        if self.start > self.stop:
            raise ValueError(f"axis start {self.start!r} exceeds stop {self.stop!r}")
        if self.log and self.start <= 0.0:
            raise ValueError("log spacing requires start > 0")

    def values(self) -> tuple[float, ...]:
        if self.count == 1:
            return (self.start,)
        if self.log:
            return tuple(float(v) for v in np.geomspace(self.start, self.stop, self.count))
        return tuple(float(v) for v in np.linspace(self.start, self.stop, self.count))


def _fixed_axis(value: float) -> AxisSpec:
    return AxisSpec(value, value, 1)


@dataclass(frozen=True)
class SweepSpec:
    """Resolved sweep request: four axes plus the fixed scenario fields."""

    theta: AxisSpec = _fixed_axis(0.0)
    separation: AxisSpec = _fixed_axis(1e-6)
    temperature: AxisSpec = _fixed_axis(0.0)
    bfield: AxisSpec = _fixed_axis(0.0)
    verdet: float = 0.0
    medium: MediumKind = MediumKind.FIXED_ANGLE
    zero_mode: ZeroModePolicy = ZeroModePolicy.FULL
    rel_tol: float = 1e-10

    def __post_init__(self):
        swept = sum(ax.count > 1 for ax in (self.theta, self.separation,
                                            self.temperature, self.bfield))
        if swept > 2:
            raise ValueError(f"at most 2 swept axes per run, got {swept}")


@dataclass(frozen=True)
class SweepRow:
    theta_rad: float
    theta_eff_rad: float
    separation_m: float
    temperature_K: float
    tau: float
    reduced_free_energy: float
    reduced_pressure: float
    free_energy_J_per_m2: float
    pressure_Pa: float
    terms_used: int
    error_estimate: float
    converged: bool


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]


def _thread_cap() -> int:
    raw = os.environ.get("CHIRAL_CASIMIR_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        v = int(raw)
    except ValueError:
        v = 0
    if v < 1:
        raise ValueError(f"CHIRAL_CASIMIR_THREADS must be a positive integer, got {raw!r}")
    return v


def _evaluate_point(theta: float, separation: float, temperature: float,
                    bfield: float, spec: SweepSpec) -> SweepRow:
    cfg = CavityConfig(separation=separation, temperature=temperature,
                       kind=spec.medium, theta=theta, verdet=spec.verdet,
                       bfield=bfield, zero_mode=spec.zero_mode)
    ctrl = SeriesControl(rel_tol=spec.rel_tol)
    theta_eff = engine.effective_theta(cfg)
    tau = engine.reduced_temperature(separation, temperature)

    # physical columns and convergence flags; physical_pressure switches to
    # finite differences for the Faraday medium where the angle scales with l
    e_res = engine.physical_free_energy(cfg, ctrl)
    p_res = engine.physical_pressure(cfg, ctrl)

    if temperature == 0.0:
        # reduced columns carry the T=0 conventions E l^3/(hbar c), P l^4/(hbar c)
        red_e = engine.reduced_free_energy_T0(theta_eff)
        red_p = engine.reduced_pressure_T0(theta_eff)
        terms, err = 0, 1e-15
    else:
        point = ReducedPoint(theta_eff, tau)
        re_res = engine.reduced_free_energy(point, ctrl, zero_mode=spec.zero_mode)
        rp_res = engine.reduced_pressure(point, ctrl, zero_mode=spec.zero_mode)
        red_e, red_p = re_res.value, rp_res.value
        terms, err = re_res.terms_used, re_res.error_estimate

    return SweepRow(theta, theta_eff, separation, temperature, tau, red_e, red_p,
                    e_res.value, p_res.value, terms, err,
                    e_res.converged and p_res.converged)


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Evaluate the grid; row order follows the axis listing, outer first."""
    pts = [
        (th, l, T, B)
        for th in spec.theta.values()
        for l in spec.separation.values()
        for T in spec.temperature.values()
        for B in spec.bfield.values()
    ]
    cap = _thread_cap()

    def work(pt):
        return _evaluate_point(*pt, spec=spec)

    if cap > 1 and len(pts) > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            rows = list(pool.map(work, pts))
    else:
        rows = [work(pt) for pt in pts]
    return SweepTable(tuple(rows))


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return format(v, ".17g")


def emit_csv(table: SweepTable, destination, units: str = "si") -> None:
    """Write the table as RFC-4180 CSV (CRLF, 17 significant digits)."""
    cols = COLUMNS if units == "si" else REDUCED_COLUMNS
    if hasattr(destination, "write"):
        _write_csv(table, destination, cols)
    else:
        with open(destination, "w", newline="") as f:
            _write_csv(table, f, cols)


def _write_csv(table: SweepTable, stream, cols) -> None:
    writer = csv.writer(stream)
    writer.writerow(cols)
    for row in table.rows:
        writer.writerow([_cell(getattr(row, c)) for c in cols])


def _certify(rel_tol: float, out) -> int:
    ctrl = SeriesControl(rel_tol=rel_tol)
    qc = oracle.QuadControl()
    failures = 0
    checks = 0
    for theta in oracle.CERTIFY_THETAS:
        for tau in oracle.CERTIFY_TAUS:
            point = ReducedPoint(theta, tau)
            e = engine.reduced_free_energy(point, ctrl).value
            o = oracle.oracle_free_energy(point, qc)
            rep = oracle.compare(e, o, _CERTIFY_TOL)
            checks += 1
            failures += not rep.passed
            print(f"theta={theta:.10f} tau={tau:.3f} engine={e:+.12e} "
                  f"oracle={o:+.12e} rel_gap={rep.rel_gap:.3e} "
                  f"{'PASS' if rep.passed else 'FAIL'}", file=out)
    for theta in _CERTIFY_T0_THETAS:
        e = engine.reduced_free_energy_T0(theta)
        o = oracle.oracle_free_energy_T0(theta, qc)
        rep = oracle.compare(e, o, _CERTIFY_TOL)
        checks += 1
        failures += not rep.passed
        print(f"theta={theta:.10f} tau=0     engine={e:+.12e} "
              f"oracle={o:+.12e} rel_gap={rep.rel_gap:.3e} "
              f"{'PASS' if rep.passed else 'FAIL'}", file=out)
    print(f"certify: {checks - failures}/{checks} comparisons passed", file=out)
    return 3 if failures else 0


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # exit code 1 is reserved for argument errors here; argparse defaults
    # to 2, so route errors through an exception instead
    def error(self, message):
        raise _UsageError(message)


def _parse_axis(text: str, flag: str) -> AxisSpec:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise _UsageError(f"{flag} expects start:stop:count[:log], got {text!r}")
    log = False
    if len(parts) == 4:
        if parts[3] == "log":
            log = True
        elif parts[3] not in ("lin", "linear"):
            raise _UsageError(f"{flag} spacing tag must be 'log', got {parts[3]!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        return AxisSpec(start, stop, count, log)
    except ValueError as exc:
        raise _UsageError(f"{flag}: {exc}") from exc


def _build_parser() -> _Parser:
    p = _Parser(prog="chiral-casimir",
                description="Casimir free energy and pressure across a "
                            "polarization-rotating gap")
    p.add_argument("--mode", choices=("point", "sweep", "certify"), default="point")
    p.add_argument("--theta", type=float, default=None, help="rotation angle per traversal [rad]")
    p.add_argument("--theta-range", default=None, metavar="START:STOP:COUNT[:log]")
    p.add_argument("--separation", type=float, default=None, help="plate separation [m]")
    p.add_argument("--separation-range", default=None, metavar="START:STOP:COUNT[:log]")
    p.add_argument("--temperature", type=float, default=None, help="temperature [K]")
    p.add_argument("--temperature-range", default=None, metavar="START:STOP:COUNT[:log]")
    p.add_argument("--bfield", type=float, default=None, help="static field [T]")
    p.add_argument("--bfield-range", default=None, metavar="START:STOP:COUNT[:log]")
    p.add_argument("--verdet", type=float, default=0.0, help="Verdet constant [rad/(T m)]")
    p.add_argument("--medium", choices=tuple(_MEDIA), default="fixed")
    p.add_argument("--zero-mode", choices=tuple(_POLICIES), default="full")
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--units", choices=("si", "reduced"), default="si")
    p.add_argument("--output", default=None, metavar="PATH")
    p.add_argument("--grid", default="default", help="certification grid name")
    return p


_AXES = ("theta", "separation", "temperature", "bfield")
_DEFAULTS = {"theta": 0.0, "separation": 1e-6, "temperature": 0.0, "bfield": 0.0}


def _axis_from_flags(ns, name: str, allow_range: bool) -> AxisSpec:
    scalar = getattr(ns, name)
    rng = getattr(ns, f"{name}_range")
    if rng is not None:
        if not allow_range:
            raise _UsageError(f"--{name}-range is only valid in sweep mode")
        if scalar is not None:
            raise _UsageError(f"give either --{name} or --{name}-range, not both")
        return _parse_axis(rng, f"--{name}-range")
    return _fixed_axis(_DEFAULTS[name] if scalar is None else scalar)


def _spec_from_flags(ns) -> SweepSpec:
    allow_range = ns.mode == "sweep"
    axes = {name: _axis_from_flags(ns, name, allow_range) for name in _AXES}
    try:
        return SweepSpec(verdet=ns.verdet, medium=_MEDIA[ns.medium],
                         zero_mode=_POLICIES[ns.zero_mode], rel_tol=ns.rel_tol,
                         **axes)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def run(argv) -> int:
    """Entry point; returns the process exit code instead of raising."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        if ns.mode == "certify":
            if ns.grid != "default":
                raise _UsageError(f"unknown certification grid {ns.grid!r}")
            SeriesControl(rel_tol=ns.rel_tol)  # validate before the long run
            if ns.output is None:
                return _certify(ns.rel_tol, sys.stdout)
            with open(ns.output, "w") as f:
                return _certify(ns.rel_tol, f)

        spec = _spec_from_flags(ns)
        table = run_sweep(spec)
        if ns.output is None:
            emit_csv(table, sys.stdout, units=ns.units)
        else:
            emit_csv(table, ns.output, units=ns.units)
        if not all(row.converged for row in table.rows):
            print("warning: some rows did not converge at the requested "
                  "tolerance", file=sys.stderr)
            return 2
        return 0
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
