"""Bloch-vector evolution under the two-rate Lindblad generator.

The closed form is the production path. ``integrate_lindblad`` integrates the
generator directly with classical RK4 and is kept as an independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    BlochVector,
    DissipatorCoefficients,
    DomainError,
    InitialState,
    initial_bloch,
)

EXP_CUTOFF = 700.0
DEFAULT_STEP = 1e-3


def decay(x: float) -> float:
    """exp(-x) with exact zero past the cutoff."""
    return 0.0 if x > EXP_CUTOFF else math.exp(-x)


def growth_complement(x: float) -> float:
    """1 - exp(-x), accurate for small x."""
    return 1.0 if x > EXP_CUTOFF else -math.expm1(-x)


@dataclass(frozen=True)
class EvolutionSpec:
    initial: InitialState
    coeffs: DissipatorCoefficients
    tau: float
    Omega: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.tau) and self.tau >= 0.0):
            raise DomainError(f"tau must be finite and >= 0, got {self.tau!r}")
        if not math.isfinite(self.Omega):
            raise DomainError("Omega must be finite")


def _check_rates(c: DissipatorCoefficients):
    if c.A < 0.0 or c.B < 0.0:
        raise DomainError(f"rates must be nonnegative, got A={c.A!r}, B={c.B!r}")
    if c.A == 0.0 and c.B > 0.0:
        raise DomainError("A = 0 with B > 0 violates A >= B")


def evolve_bloch(spec: EvolutionSpec) -> BlochVector:
    c = spec.coeffs
    _check_rates(c)
    th, tau = spec.initial.theta, spec.tau
    if tau == 0.0:
        return initial_bloch(spec.initial)
    st, ct = math.sin(th), math.cos(th)
    phase = spec.Omega * tau + spec.initial.phi
    e2 = decay(2.0 * c.A * tau)
    if c.A == 0.0:
        w3 = ct
    else:
        e4 = decay(4.0 * c.A * tau)
        w3 = ct * e4 - c.ratio * growth_complement(4.0 * c.A * tau)
    return BlochVector(st * math.cos(phase) * e2, st * math.sin(phase) * e2, w3)


def purity_deficit(spec: EvolutionSpec) -> float:
    """1 - |w|^2 of the evolved state, free of cancellation.

    With r = B/A, E = exp(-4 A tau) and D = 1 - E the deficit factors as
    (1 - r^2) D + E D (cos(theta) + r)^2, a sum of nonnegative terms.
    """
    c = spec.coeffs
    _check_rates(c)
    if spec.tau == 0.0 or c.A == 0.0:
        return 0.0
    x = 4.0 * c.A * spec.tau
    E, D = decay(x), growth_complement(x)
    r = c.ratio
    one_minus_r2 = (c.gap / c.A) * (1.0 + r)
    return one_minus_r2 * D + E * D * (math.cos(spec.initial.theta) + r) ** 2


def steady_state(coeffs: DissipatorCoefficients) -> BlochVector:
    if not coeffs.A > 0.0:
        raise DomainError(f"steady state needs A > 0, got {coeffs.A!r}")
    return BlochVector(0.0, 0.0, -coeffs.ratio)


def _rk4(rhs, y, t_end, step):
    n = max(1, math.ceil(t_end / step - 1e-9))
    h = t_end / n
    for _ in range(n):
        k1 = rhs(y)
        k2 = rhs([yi + 0.5 * h * ki for yi, ki in zip(y, k1)])
        k3 = rhs([yi + 0.5 * h * ki for yi, ki in zip(y, k2)])
        k4 = rhs([yi + h * ki for yi, ki in zip(y, k3)])
        y = [yi + h / 6.0 * (a + 2.0 * b + 2.0 * c + d) for yi, a, b, c, d in zip(y, k1, k2, k3, k4)]
    return y


def integrate_lindblad(spec: EvolutionSpec, step: float = DEFAULT_STEP) -> BlochVector:
    """Fixed-step RK4 on the Bloch equations of the Lindblad generator.

    dw1 = -2A w1 - Omega w2,  dw2 = Omega w1 - 2A w2,  dw3 = -4A w3 - 4B.
    The rotation sign matches the closed form's advancing phase.
    """
    if not step > 0.0:
        raise DomainError(f"step must be > 0, got {step!r}")
    c = spec.coeffs
    _check_rates(c)
    A, B, W = c.A, c.B, spec.Omega

    def rhs(w):
        return [
            -2.0 * A * w[0] - W * w[1],
            W * w[0] - 2.0 * A * w[1],
            -4.0 * A * w[2] - 4.0 * B,
        ]

    y0 = list(initial_bloch(spec.initial).as_tuple())
    if spec.tau == 0.0:
        return BlochVector(*y0)
    return BlochVector(*_rk4(rhs, y0, spec.tau, step))
