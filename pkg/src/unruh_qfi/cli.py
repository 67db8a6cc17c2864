"""Command-line front end.

    unruh-qfi figure fig3 left --out fig3_left.csv
    unruh-qfi sweep --config run.cfg --out surface.json
    unruh-qfi peaks --config run.cfg --tau 12.5
    unruh-qfi validate --only gibbs --tol oracle=1e-9

Exit codes: 0 ok, 1 validation failure, 2 usage/config error, 3 I/O error,
4 numeric domain error.
"""
from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .analysis import AXIS_NAMES, QfiSurface, SweepAxis, find_peaks, profile, required_parameters, sweep, theta_axis
from .core import DomainError, Kind
from .validation import run_checks, select_checks

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_IO, EXIT_DOMAIN = 0, 1, 2, 3, 4

PANELS = ("left", "middle", "right")

# fixed grids used by every figure command
A_AXIS = dict(name="a", min=0.05, max=10.0, count=100)
T_AXIS = dict(name="T", min=0.05, max=5.0, count=100)
TAU_UNBOUNDED = dict(name="tau", min=0.05, max=10.0, count=100)
TAU_BOUNDARY = dict(name="tau", min=0.1, max=40.0, count=100)
THETA_COUNT = 64

FIGURES = {
    "fig1": dict(kind=Kind.UNRUH_UNBOUNDED, axes=(A_AXIS, TAU_UNBOUNDED), panel_key="theta",
                 panel_values=(0.0, math.pi / 2, math.pi), fixed={}),
    "fig2": dict(kind=Kind.UNRUH_UNBOUNDED, axes=(A_AXIS, "theta"), panel_key="tau",
                 panel_values=(0.1, 5.0, 9.0), fixed={}),
    "fig3": dict(kind=Kind.UNRUH_BOUNDARY, axes=(A_AXIS, TAU_BOUNDARY), panel_key="z",
                 panel_values=(0.01, 0.5, 1.0), fixed={"theta": 0.0}),
    "fig4": dict(kind=Kind.UNRUH_BOUNDARY, axes=(A_AXIS, "theta"), panel_key="tau",
                 panel_values=(5.0, 20.0, 40.0), fixed={"z": 0.5}),
    "fig5": dict(kind=Kind.THERMAL_BOUNDARY, axes=(T_AXIS, TAU_BOUNDARY), panel_key="z",
                 panel_values=(0.01, 0.5, 1.0), fixed={"theta": 0.0}),
    "fig6": dict(kind=Kind.THERMAL_BOUNDARY, axes=(T_AXIS, "theta"), panel_key="tau",
                 panel_values=(5.0, 20.0, 40.0), fixed={"z": 0.5}),
}


class ConfigError(Exception):
    """Raised with every offending field of a run configuration."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _axis(spec) -> SweepAxis:
    return theta_axis(THETA_COUNT) if spec == "theta" else SweepAxis(**spec)


def figure_surface(fig_id: str, panel: str) -> QfiSurface:
    fig = FIGURES[fig_id]
    fixed = dict(fig["fixed"])
    fixed[fig["panel_key"]] = fig["panel_values"][PANELS.index(panel)]
    ax1, ax2 = (_axis(s) for s in fig["axes"])
    surface = sweep(fig["kind"], ax1, ax2, fixed)
    surface.fixed = {"figure": fig_id, "panel": panel, **surface.fixed}
    return surface


def fmt(x) -> str:
    """Shortest decimal string that round-trips the double."""
    return repr(float(x))


def render_csv(surface: QfiSurface) -> str:
    out = io.StringIO()
    out.write(f"# meta kind={surface.kind.value}\n")
    for key, value in surface.fixed.items():
        out.write(f"# {key}={value if isinstance(value, str) else fmt(value)}\n")
    for label, ax in (("axis1", surface.axis1), ("axis2", surface.axis2)):
        out.write(f"# {label}={ax.name} min={fmt(ax.min)} max={fmt(ax.max)} count={ax.count}"
                  f"{'' if ax.endpoint else ' endpoint=false'}\n")
    out.write(f"{surface.axis1.name},{surface.axis2.name},F\n")
    v2 = surface.axis2.values()
    for x, row in zip(surface.axis1.values(), surface.values):
        sx = fmt(x)
        for y, F in zip(v2, row):
            out.write(f"{sx},{fmt(y)},{fmt(F)}\n")
    return out.getvalue()


def render_json(surface: QfiSurface) -> str:
    if not np.all(np.isfinite(surface.values)):
        raise DomainError("surface contains non-finite values")
    fixed = {k: (v if isinstance(v, str) else float(v)) for k, v in surface.fixed.items()}
    doc = {
        "meta": {
            "kind": surface.kind.value,
            "fixed": fixed,
            "axes": [surface.axis1.describe(), surface.axis2.describe()],
        },
        "values": [[float(v) for v in row] for row in surface.values],
    }
    return json.dumps(doc, indent=1) + "\n"


def write_surface(surface: QfiSurface, path: str, fmt_name: str) -> None:
    text = render_json(surface) if fmt_name == "json" else render_csv(surface)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


@dataclass
class RunConfig:
    kind: Kind
    axis1: SweepAxis
    axis2: SweepAxis
    fixed: dict = field(default_factory=dict)
    format: str = "csv"
    derivative: str = "analytic"
    min_prominence: float = 1e-6


SCALAR_KEYS = ("theta", "phi", "Omega", "a", "T", "tau", "z")
CONFIG_KEYS = {"kind", "axis1", "axis2", "format", "derivative", "min_prominence", *SCALAR_KEYS}


def parse_config(text: str) -> RunConfig:
    """Parse a flat ``key = value`` document (``#`` starts a comment).

    Axis values read ``name min max count``, e.g. ``axis1 = a 0.05 10 100``.
    """
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError([f"unparseable config: {exc}"]) from exc
    raw = dict(cp["run"])
    problems = [f"unknown key {k!r}" for k in raw if k not in CONFIG_KEYS]

    kind = None
    if "kind" not in raw:
        problems.append("missing key 'kind'")
    else:
        try:
            kind = Kind(raw["kind"].strip())
        except ValueError:
            problems.append(f"kind: expected one of {[k.value for k in Kind]}, got {raw['kind']!r}")

    axes = []
    swept = set()
    for key in ("axis1", "axis2"):
        if key not in raw:
            problems.append(f"missing key {key!r}")
            continue
        parts = raw[key].split()
        if parts:
            swept.add(parts[0])
        try:
            if len(parts) != 4:
                raise ValueError("expected 'name min max count'")
            if parts[0] == "theta" and parts[1:3] == ["0", "2pi"]:
                axes.append(theta_axis(int(parts[3])))
            else:
                axes.append(SweepAxis(parts[0], float(parts[1]), float(parts[2]), int(parts[3])))
        except (ValueError, DomainError) as exc:
            problems.append(f"{key}: {exc}")

    fixed = {}
    for key in SCALAR_KEYS:
        if key in raw:
            try:
                fixed[key] = float(raw[key])
            except ValueError:
                problems.append(f"{key}: not a number: {raw[key]!r}")

    fmt_name = raw.get("format", "csv").strip()
    if fmt_name not in ("csv", "json"):
        problems.append(f"format: expected csv or json, got {fmt_name!r}")
    mode = raw.get("derivative", "analytic").strip()
    if mode not in ("analytic", "fd"):
        problems.append(f"derivative: expected analytic or fd, got {mode!r}")
    try:
        min_prom = float(raw.get("min_prominence", "1e-6"))
    except ValueError:
        problems.append("min_prominence: not a number")
        min_prom = 1e-6

    if len(axes) == 2 and axes[0].name == axes[1].name:
        problems.append("axis2: must name a different parameter than axis1")
    if kind is not None:
        need = required_parameters(kind)
        for name in sorted(swept & set(AXIS_NAMES) - need):
            problems.append(f"{name}: not a parameter of {kind.value}")
        if swept & set(fixed):
            problems.extend(f"{k}: both swept and fixed" for k in sorted(swept & set(fixed)))
        for k in sorted(need - swept - set(fixed)):
            problems.append(f"missing key {k!r} required by {kind.value}")
        for k in sorted(set(fixed) - need - {"phi", "Omega"}):
            problems.append(f"{k}: not used by {kind.value}")
    if problems:
        raise ConfigError(problems)
    return RunConfig(kind, axes[0], axes[1], fixed, fmt_name, mode, min_prom)


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def cmd_figure(args) -> int:
    surface = figure_surface(args.id, args.panel)
    write_surface(surface, args.out, args.format)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    surface = sweep(cfg.kind, cfg.axis1, cfg.axis2, cfg.fixed, mode=cfg.derivative)
    write_surface(surface, args.out, args.format or cfg.format)
    return EXIT_OK


def cmd_peaks(args) -> int:
    """Peaks of F along the estimated parameter, one block per slice."""
    cfg = load_config(args.config)
    pname = cfg.kind.parameter
    if pname not in (cfg.axis1.name, cfg.axis2.name):
        raise ConfigError([f"peaks needs the {pname!r} axis to be swept"])
    x_axis = cfg.axis1 if cfg.axis1.name == pname else cfg.axis2
    other = cfg.axis2 if x_axis is cfg.axis1 else cfg.axis1
    xs = x_axis.values()
    if args.tau is not None:
        fixed = dict(cfg.fixed, tau=args.tau)
        if other.name == "tau":
            slices = [(args.tau, profile(cfg.kind, x_axis, fixed, mode=cfg.derivative))]
        else:
            surface = sweep(cfg.kind, other, x_axis, fixed, mode=cfg.derivative)
            slices = list(zip(other.values(), surface.values))
    else:
        surface = sweep(cfg.kind, other, x_axis, cfg.fixed, mode=cfg.derivative)
        slices = list(zip(other.values(), surface.values))
    label = "tau" if args.tau is not None and other.name == "tau" else other.name
    out = sys.stdout
    out.write(f"# kind={cfg.kind.value} min_prominence={fmt(cfg.min_prominence)}\n")
    out.write(f"{label},count,location,value,prominence\n")
    for s, row in slices:
        report = find_peaks(xs, row, cfg.min_prominence)
        if not report.peaks:
            out.write(f"{fmt(s)},0,,,\n")
        for p in report.peaks:
            out.write(f"{fmt(s)},{report.count},{fmt(p.location)},{fmt(p.value)},{fmt(p.prominence)}\n")
    return EXIT_OK


def _parse_tolerances(items) -> dict:
    tols = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigError([f"--tol expects NAME=VALUE, got {item!r}"])
        try:
            select_checks([name])
            tols[name] = float(value)
        except KeyError:
            raise ConfigError([f"--tol: unknown check {name!r}"])
        except ValueError:
            raise ConfigError([f"--tol: not a number: {value!r}"])
    return tols


def cmd_validate(args) -> int:
    tols = _parse_tolerances(args.tol)
    try:
        names = select_checks(args.only)
    except KeyError as exc:
        raise ConfigError([f"--only: unknown check(s) {exc.args[0]}"])
    results = run_checks(names, tols)
    width = max(len(r.name) for r in results)
    print(f"{'check':<{width}}  {'observed':>12}  {'bound':>10}  result")
    for r in results:
        print(f"{r.name:<{width}}  {r.observed:12.3e}  {r.bound:10.1e}  {'PASS' if r.passed else 'FAIL'}")
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(f"FAILED {r.name}: observed {r.observed!r} exceeds bound {r.bound!r} ({r.detail})", file=sys.stderr)
    return EXIT_VALIDATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unruh-qfi", description="QFI of acceleration and temperature for a two-level detector")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("figure", help="write the data grid behind one figure panel")
    f.add_argument("id", choices=sorted(FIGURES))
    f.add_argument("panel", choices=PANELS)
    f.add_argument("--out", required=True)
    f.add_argument("--format", choices=("csv", "json"), default="csv")
    f.set_defaults(func=cmd_figure)

    s = sub.add_parser("sweep", help="evaluate F on a grid described by a config file")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=("csv", "json"), default=None)
    s.set_defaults(func=cmd_sweep)

    k = sub.add_parser("peaks", help="list interior maxima of F along the estimated parameter")
    k.add_argument("--config", required=True)
    k.add_argument("--tau", type=float, default=None)
    k.set_defaults(func=cmd_peaks)

    v = sub.add_parser("validate", help="run the oracle cross-checks")
    v.add_argument("--only", action="append", metavar="NAME")
    v.add_argument("--tol", action="append", metavar="NAME=VALUE")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
