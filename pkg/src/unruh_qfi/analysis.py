"""Grid sweeps of the QFI, peak finding on slices, and optimum search."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import DomainError, EnvironmentModel, InitialState, Kind, TWO_PI
from .qfi import qfi_parameter

AXIS_NAMES = ("a", "T", "tau", "theta", "z")
THREADS_ENV = "UNRUH_QFI_THREADS"
DEFAULT_MIN_PROMINENCE = 1e-6
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
# below this many grid points a process pool costs more than it saves
PARALLEL_MIN_POINTS = 4000


@dataclass(frozen=True)
class SweepAxis:
    name: str
    min: float
    max: float
    count: int
    endpoint: bool = True

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise DomainError(f"unknown axis {self.name!r}; expected one of {AXIS_NAMES}")
        if not (math.isfinite(self.min) and math.isfinite(self.max) and self.min < self.max):
            raise DomainError(f"axis {self.name}: need finite min < max, got [{self.min}, {self.max}]")
        if int(self.count) != self.count or self.count < 2:
            raise DomainError(f"axis {self.name}: count must be an integer >= 2")
        if self.name in ("a", "T", "z") and self.min <= 0.0:
            raise DomainError(f"axis {self.name}: min must be > 0")
        if self.name == "tau" and self.min < 0.0:
            raise DomainError("axis tau: min must be >= 0")

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, int(self.count), endpoint=self.endpoint)

    def describe(self) -> dict:
        d = {"name": self.name, "min": self.min, "max": self.max, "count": int(self.count)}
        if not self.endpoint:
            d["endpoint"] = False
        return d


def theta_axis(count: int = 64) -> SweepAxis:
    """Uniform samples of [0, 2 pi) excluding the duplicate endpoint."""
    return SweepAxis("theta", 0.0, TWO_PI, count, endpoint=False)


@dataclass
class QfiSurface:
    """QFI on axis1 x axis2; ``values[i, j]`` belongs to (axis1[i], axis2[j])."""

    kind: Kind
    axis1: SweepAxis
    axis2: SweepAxis
    values: np.ndarray
    fixed: dict = field(default_factory=dict)

    def slice(self, i: int) -> np.ndarray:
        return self.values[i]


@dataclass(frozen=True)
class Peak:
    location: float
    value: float
    prominence: float
    index: int


@dataclass
class PeakReport:
    peaks: list
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.peaks)

    @property
    def count(self) -> int:
        return len(self.peaks)


@dataclass(frozen=True)
class Optimum:
    X: float
    F: float
    boundary_maximum: bool


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    n = int(raw) if raw else 0
    if n < 0:
        raise DomainError(f"{THREADS_ENV} must be >= 0")
    return n or (os.cpu_count() or 1)


def _point_args(kind: Kind, params: dict):
    X = params["T" if kind.is_thermal else "a"]
    model = EnvironmentModel(kind, X, params.get("z") if kind.has_boundary else None)
    state = InitialState(params["theta"], params.get("phi", 0.0))
    return model, state, params["tau"], params.get("Omega", 1.0)


def _row(job):
    kind, name1, v1, name2, values2, fixed, mode = job
    out = np.empty(len(values2))
    params = dict(fixed)
    params[name1] = v1
    for j, v2 in enumerate(values2):
        params[name2] = v2
        model, state, tau, Omega = _point_args(kind, params)
        out[j] = qfi_parameter(model, state, tau, Omega, mode=mode)
    return out


def profile(kind: Kind | str, axis: SweepAxis, fixed: dict, mode: str = "analytic") -> np.ndarray:
    """F along a single axis with every other parameter fixed."""
    kind = Kind(kind)
    params = {"phi": 0.0, "Omega": 1.0, **fixed}
    return _row((kind, "_", None, axis.name, axis.values().tolist(), params, mode))


def required_parameters(kind: Kind) -> set:
    req = {kind.parameter, "tau", "theta"}
    if kind.has_boundary:
        req.add("z")
    return req


def sweep(
    kind: Kind | str,
    axis1: SweepAxis,
    axis2: SweepAxis,
    fixed: Optional[dict] = None,
    mode: str = "analytic",
    workers: Optional[int] = None,
) -> QfiSurface:
    """Evaluate the QFI on the product grid axis1 x axis2.

    ``fixed`` supplies every remaining parameter; ``phi`` and ``Omega``
    default to 0 and 1.
    """
    kind = Kind(kind)
    fixed = dict(fixed or {})
    if axis1.name == axis2.name:
        raise DomainError("sweep axes must name distinct parameters")
    allowed = required_parameters(kind) | {"phi", "Omega"}
    for ax in (axis1, axis2):
        if ax.name not in required_parameters(kind):
            raise DomainError(f"axis {ax.name!r} is not a parameter of {kind.value}")
        if ax.name in fixed:
            raise DomainError(f"{ax.name!r} is both swept and fixed")
    unknown = set(fixed) - allowed
    if unknown:
        raise DomainError(f"unexpected fixed parameters for {kind.value}: {sorted(unknown)}")
    missing = required_parameters(kind) - set(fixed) - {axis1.name, axis2.name}
    if missing:
        raise DomainError(f"missing fixed parameters: {sorted(missing)}")
    fixed.setdefault("phi", 0.0)
    fixed.setdefault("Omega", 1.0)

    v1, v2 = axis1.values(), axis2.values()
    jobs = [(kind, axis1.name, float(x), axis2.name, v2.tolist(), fixed, mode) for x in v1]
    n = worker_count() if workers is None else workers
    if n > 1 and len(v1) * len(v2) >= PARALLEL_MIN_POINTS:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(job) for job in jobs]
    values = np.vstack(rows)
    return QfiSurface(kind, axis1, axis2, values, fixed)


def _prominence(ys: np.ndarray, i: int) -> float:
    peak = ys[i]
    j = i
    left_min = peak
    while j > 0:
        j -= 1
        if ys[j] > peak:
            break
        left_min = min(left_min, ys[j])
    j = i
    right_min = peak
    n = len(ys)
    while j < n - 1:
        j += 1
        if ys[j] > peak:
            break
        right_min = min(right_min, ys[j])
    return float(peak - max(left_min, right_min))


def _vertex(x0, x1, x2, y0, y1, y2):
    """Vertex of the parabola through three points (x0 < x1 < x2)."""
    d01, d12 = (y1 - y0) / (x1 - x0), (y2 - y1) / (x2 - x1)
    curv = (d12 - d01) / (x2 - x0)
    if curv >= 0.0:
        return x1, y1
    xv = 0.5 * (x0 + x1) - d01 / (2.0 * curv)
    # vertex is inside [x0, x2] whenever y1 is a strict 3-point maximum
    xv = min(max(xv, x0), x2)
    return xv, y1 + (xv - x1) * (d01 + curv * (xv - x0))


def find_peaks(xs: Sequence[float], ys: Sequence[float], min_prominence: float = DEFAULT_MIN_PROMINENCE) -> PeakReport:
    """Interior local maxima of a sampled curve.

    A plateau counts once, at its leftmost sample, and is not refined. Strict
    maxima are refined by a parabola through the three bracketing samples.
    Peaks whose prominence does not exceed ``min_prominence * max|ys|`` are
    dropped.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise DomainError("xs and ys must be 1-D arrays of equal length")
    if len(xs) < 3:
        raise DomainError("need at least 3 samples to find interior peaks")
    if np.any(np.diff(xs) <= 0.0):
        raise DomainError("xs must be strictly increasing")
    scale = float(np.max(np.abs(ys)))
    threshold = min_prominence * scale
    n = len(ys)
    peaks = []
    i = 1
    while i < n - 1:
        if ys[i] > ys[i - 1]:
            j = i
            while j + 1 < n and ys[j + 1] == ys[i]:
                j += 1
            if j + 1 < n and ys[j + 1] < ys[i]:
                prom = _prominence(ys, i)
                if prom > threshold:
                    if j == i:
                        x, y = _vertex(xs[i - 1], xs[i], xs[i + 1], ys[i - 1], ys[i], ys[i + 1])
                    else:
                        x, y = xs[i], ys[i]
                    peaks.append(Peak(float(x), float(y), prom, i))
            i = j + 1
        else:
            i += 1
    return PeakReport(peaks, {"n": n, "min_prominence": min_prominence})


def slice_peak_counts(surface: QfiSurface, min_prominence: float = DEFAULT_MIN_PROMINENCE) -> np.ndarray:
    """Number of peaks along axis2 for every fixed value of axis1."""
    xs = surface.axis2.values()
    return np.array([find_peaks(xs, row, min_prominence).count for row in surface.values])


def golden_max(f, lo: float, hi: float, tol: float = 1e-6):
    """Golden-section search for the maximum of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def optimal_parameter(
    kind: Kind | str,
    interval: tuple[float, float],
    tau: float,
    theta: float = 0.0,
    z: Optional[float] = None,
    phi: float = 0.0,
    Omega: float = 1.0,
    n_grid: int = 400,
    tol: float = 1e-6,
) -> Optimum:
    """Global maximiser of F over the interval: grid scan, then golden section.

    A maximum on the first or last grid point is reported with
    ``boundary_maximum=True`` and is not refined.
    """
    kind = Kind(kind)
    lo, hi = interval
    if not (0.0 < lo < hi):
        raise DomainError(f"search interval must satisfy 0 < lo < hi, got {interval}")
    state = InitialState(theta, phi)
    zz = z if kind.has_boundary else None

    def F(X):
        return qfi_parameter(EnvironmentModel(kind, X, zz), state, tau, Omega)

    xs = np.linspace(lo, hi, n_grid)
    fs = np.array([F(x) for x in xs])
    k = int(np.argmax(fs))
    if k == 0 or k == n_grid - 1:
        return Optimum(float(xs[k]), float(fs[k]), True)
    x_ref, f_ref = golden_max(F, float(xs[k - 1]), float(xs[k + 1]), tol)
    if f_ref < fs[k]:
        return Optimum(float(xs[k]), float(fs[k]), False)
    return Optimum(float(x_ref), float(f_ref), False)


def theta_amplitude(
    kind: Kind | str,
    tau: float,
    X_axis: SweepAxis,
    z: Optional[float] = None,
    phi: float = 0.0,
    Omega: float = 1.0,
    n_theta: int = 64,
) -> float:
    """Largest spread of F over the initial angle theta, taken across X.

    For every X on the grid the spread max_theta F - min_theta F is formed,
    with theta on ``n_theta`` points of [0, 2 pi); the result is the largest
    such spread.
    """
    kind = Kind(kind)
    fixed = {"tau": tau, "phi": phi, "Omega": Omega}
    if kind.has_boundary:
        fixed["z"] = z
    surface = sweep(kind, theta_axis(n_theta), X_axis, fixed)
    spread = surface.values.max(axis=0) - surface.values.min(axis=0)
    return float(spread.max())
