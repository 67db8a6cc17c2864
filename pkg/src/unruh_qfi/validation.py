"""Cross-checks between the production paths and independent oracles.

Each check returns a :class:`CheckResult` holding the worst observed
deviation and the bound it is held to. The extended-precision reference
below re-derives the rates and the Bloch vector from scratch with mpmath and
shares no code with :mod:`unruh_qfi.environments` or
:mod:`unruh_qfi.dynamics`.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath

from .core import BlochVector, EnvironmentModel, InitialState, Kind
from .dynamics import EvolutionSpec, evolve_bloch, integrate_lindblad
from .environments import coefficients, thermal_boundary, thermal_unbounded, unruh_boundary, unruh_unbounded
from .qfi import QfiInput, bloch_derivative, qfi_from_bloch, qfi_parameter, qfi_sld_oracle

REFERENCE_DPS = 30


def reference_rates(kind: Kind, X, z=None):
    """(A, B) as mpmath numbers, straight from the closed forms."""
    with mpmath.workdps(REFERENCE_DPS):
        X = mpmath.mpf(X)
        x = 1 / (2 * X) if kind.is_thermal else mpmath.pi / X
        if kind is Kind.UNRUH_BOUNDARY:
            z = mpmath.mpf(z)
            f = mpmath.sin(2 / X * mpmath.asinh(X * z)) / (2 * z * mpmath.sqrt(1 + X**2 * z**2))
        elif kind is Kind.THERMAL_BOUNDARY:
            z = mpmath.mpf(z)
            f = mpmath.sin(2 * z) / (2 * z)
        else:
            f = mpmath.mpf(0)
        return mpmath.coth(x) * (1 - f) / 2, (1 - f) / 2


def reference_bloch(kind: Kind, X, tau, theta, z=None, phi=0.0, Omega=1.0):
    with mpmath.workdps(REFERENCE_DPS):
        A, B = reference_rates(kind, X, z)
        tau, theta = mpmath.mpf(tau), mpmath.mpf(theta)
        e2, e4 = mpmath.exp(-2 * A * tau), mpmath.exp(-4 * A * tau)
        phase = Omega * tau + phi
        return (
            mpmath.sin(theta) * mpmath.cos(phase) * e2,
            mpmath.sin(theta) * mpmath.sin(phase) * e2,
            mpmath.cos(theta) * e4 - B / A * (1 - e4),
        )


def reference_fd_derivative(kind: Kind, X, tau, theta, z=None):
    """Central difference of the reference Bloch vector, step 1e-5 * max(1, |X|)."""
    with mpmath.workdps(REFERENCE_DPS):
        h = mpmath.mpf("1e-5") * max(1, abs(X))
        Xm = mpmath.mpf(X)
        hi = reference_bloch(kind, Xm + h, tau, theta, z)
        lo = reference_bloch(kind, Xm - h, tau, theta, z)
        return tuple(float((p - q) / (2 * h)) for p, q in zip(hi, lo))


@dataclass
class CheckResult:
    name: str
    observed: float
    bound: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.observed <= self.bound


def _model(kind: Kind, X: float, z: Optional[float]) -> EnvironmentModel:
    return EnvironmentModel(kind, X, z if kind.has_boundary else None)


def random_spec(rng: random.Random):
    """A random (kind, X, z, state, Omega, tau) tuple on moderate domains."""
    kind = rng.choice(list(Kind))
    X = rng.uniform(0.2, 10.0) if not kind.is_thermal else rng.uniform(0.05, 2.0)
    z = rng.uniform(0.05, 3.0) if kind.has_boundary else None
    state = InitialState(rng.uniform(0.0, 2 * math.pi), rng.uniform(0.0, 2 * math.pi))
    return kind, X, z, state, rng.uniform(0.1, 5.0), rng.uniform(0.0, 20.0)


def check_oracle(bound: float = 1e-8, n: int = 100, step: float = 1e-3, seed: int = 7) -> CheckResult:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n):
        kind, X, z, state, Omega, tau = random_spec(rng)
        spec = EvolutionSpec(state, coefficients(_model(kind, X, z)), tau, Omega)
        a = evolve_bloch(spec).as_tuple()
        b = integrate_lindblad(spec, step).as_tuple()
        worst = max(worst, max(abs(p - q) for p, q in zip(a, b)))
    return CheckResult("oracle", worst, bound, f"{n} random specs, RK4 step {step}")


VALIDATION_X = {"a": (0.5, 1.0, 2.0, 5.0, 10.0), "T": (0.1, 0.2, 0.5, 1.0, 2.0)}


def check_derivative(bound: float = 1e-6, floor: float = 1e-10) -> CheckResult:
    worst = 0.0
    for kind in Kind:
        zs = (0.5, 1.0) if kind.has_boundary else (None,)
        for X, tau, theta, z in itertools.product(
            VALIDATION_X[kind.parameter], (0.5, 2.0, 5.0, 10.0), (0.0, math.pi / 4, math.pi / 2, math.pi), zs
        ):
            an = bloch_derivative(_model(kind, X, z), InitialState(theta), tau)
            fd = reference_fd_derivative(kind, X, tau, theta, z)
            err = math.dist(an, fd)
            size = math.hypot(*an)
            if size >= floor:
                worst = max(worst, err / size)
            elif err > floor:
                worst = math.inf
    return CheckResult("derivative", worst, bound, "relative; absolute 1e-10 where |dw| < 1e-10")


def check_sld(bound: float = 1e-9, n: int = 1000, seed: int = 11) -> CheckResult:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n):
        r = rng.uniform(0.0, 0.999)
        v = [rng.gauss(0, 1) for _ in range(3)]
        norm = math.hypot(*v)
        inp = QfiInput(BlochVector(*(r * c / norm for c in v)), [rng.gauss(0, 1) for _ in range(3)])
        F1, F2 = qfi_from_bloch(inp), qfi_sld_oracle(inp)
        worst = max(worst, abs(F1 - F2) / max(1.0, F1))
    return CheckResult("sld", worst, bound, "|dF| / max(1, F)")


def check_reparam(bound: float = 1e-9) -> CheckResult:
    worst = 0.0
    for a, tau, theta in itertools.product((0.5, 1, 2, 5, 10), (0.5, 2, 5, 10), (0.0, math.pi / 2, math.pi)):
        st = InitialState(theta)
        Fa = qfi_parameter(EnvironmentModel(Kind.UNRUH_UNBOUNDED, a), st, tau)
        FT = qfi_parameter(EnvironmentModel(Kind.THERMAL_UNBOUNDED, a / (2 * math.pi)), st, tau)
        worst = max(worst, abs(Fa - FT / (2 * math.pi) ** 2) / Fa)
    return CheckResult("reparam", worst, bound, "relative")


def check_gibbs(bound: float = 1e-12) -> CheckResult:
    worst = 0.0
    for X in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0):
        for kind, target in (
            (Kind.UNRUH_UNBOUNDED, -math.tanh(math.pi / X)),
            (Kind.THERMAL_UNBOUNDED, -math.tanh(1 / (2 * X))),
        ):
            c = coefficients(EnvironmentModel(kind, X))
            tau = 700.0 / (4.0 * c.A) + 1.0
            w = evolve_bloch(EvolutionSpec(InitialState(0.3, 0.2), c, tau))
            worst = max(worst, abs(w.w3 - target), abs(w.w1), abs(w.w2))
    return CheckResult("gibbs", worst, bound, "absolute")


def check_invariance(bound: float = 1e-12, n: int = 50, seed: int = 5) -> CheckResult:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n):
        kind, X, z, _, _, tau = random_spec(rng)
        theta = rng.uniform(0, 2 * math.pi)
        model = _model(kind, X, z)
        values = [
            qfi_parameter(model, InitialState(theta, phi), tau, Omega)
            for Omega in (0.1, 1.0, 10.0, 100.0)
            for phi in (0.0, 1.0, 2.0, math.pi)
        ]
        worst = max(worst, max(values) - min(values))
    return CheckResult("invariance", worst, bound, "absolute spread over Omega, phi")


def check_boundary_pi2(bound: float = 1e-14) -> CheckResult:
    worst = 0.0
    for T in (0.05, 0.1, 0.5, 1.0, 5.0, 50.0):
        b, u = thermal_boundary(T, math.pi / 2), thermal_unbounded(T)
        worst = max(worst, abs(b.A - u.A), abs(b.B - u.B), abs(b.dA_dX - u.dA_dX))
    return CheckResult("boundary_pi2", worst, bound, "thermal wall at z = pi/2 vs no wall")


def check_boundary_far(bound: float = 1e-3) -> CheckResult:
    worst = 0.0
    for a in (0.05, 0.5, 1.0, 2.0, 5.0, 10.0):
        b, u = unruh_boundary(a, 100.0), unruh_unbounded(a)
        worst = max(worst, abs(b.A - u.A) / u.A, abs(b.B - u.B) / u.B)
    return CheckResult("boundary_far", worst, bound, "Unruh wall at z = 100, relative")


def check_boundary_wall(bound: float = 1e-7) -> CheckResult:
    worst = 0.0
    for X in (0.05, 0.5, 1.0, 5.0, 10.0):
        for c in (unruh_boundary(X, 1e-8), thermal_boundary(X, 1e-8)):
            worst = max(worst, c.A, c.B)
    return CheckResult("boundary_wall", worst, bound, "A, B at z = 1e-8")


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "oracle": check_oracle,
    "derivative": check_derivative,
    "sld": check_sld,
    "reparam": check_reparam,
    "gibbs": check_gibbs,
    "invariance": check_invariance,
    "boundary_pi2": check_boundary_pi2,
    "boundary_far": check_boundary_far,
    "boundary_wall": check_boundary_wall,
}


def select_checks(only: Optional[list] = None) -> list:
    """Names of checks to run; ``only`` entries match exactly or by prefix."""
    if not only:
        return list(CHECKS)
    picked = [name for name in CHECKS if any(name == o or name.startswith(o) for o in only)]
    unknown = [o for o in only if not any(n == o or n.startswith(o) for n in CHECKS)]
    if unknown:
        raise KeyError(", ".join(unknown))
    return picked


def run_checks(only: Optional[list] = None, tolerances: Optional[dict] = None) -> list:
    tolerances = tolerances or {}
    results = []
    for name in select_checks(only):
        fn = CHECKS[name]
        results.append(fn(tolerances[name]) if name in tolerances else fn())
    return results
