"""Quantum Fisher information of the bath parameter carried by the qubit.

Two independent evaluations are provided: the closed Bloch-vector formula
(production) and a symmetric-logarithmic-derivative sum over the density
matrix eigenbasis (oracle).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import BlochVector, DomainError, EnvironmentModel, InitialState, Kind
from .dynamics import EvolutionSpec, decay, evolve_bloch, growth_complement, purity_deficit
from .environments import coefficients

PURE_EPS = 1e-9
SLD_DELTA = 1e-12

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class DegenerateBoundaryError(DomainError):
    """Radial parameter derivative of a pure state; the formula is singular."""


@dataclass(frozen=True)
class QfiInput:
    """Bloch vector, its parameter derivative, and optionally 1 - |w|^2.

    When ``deficit`` is supplied it must be exact (not 1 - |w|^2 recomputed
    from rounded components); the pure-state threshold then collapses to 0.
    """

    omega: BlochVector
    d_omega: Sequence[float]
    deficit: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "d_omega", tuple(float(v) for v in self.d_omega))
        if len(self.d_omega) != 3:
            raise ValueError("d_omega must have three components")
        if self.omega.norm() > 1.0 + 1e-12:
            raise DomainError(f"|w| = {self.omega.norm()!r} exceeds 1")


def qfi_from_bloch(inp: QfiInput, eps: float = PURE_EPS) -> float:
    w = inp.omega.as_tuple()
    dw = inp.d_omega
    dw2 = sum(d * d for d in dw)
    wdw = sum(a * b for a, b in zip(w, dw))
    if inp.deficit is None:
        deficit = 1.0 - sum(a * a for a in w)
    else:
        deficit, eps = inp.deficit, 0.0
    if deficit > eps:
        return dw2 + wdw * wdw / deficit
    if abs(wdw) <= math.sqrt(PURE_EPS) * math.sqrt(dw2):
        return dw2
    raise DegenerateBoundaryError(
        f"pure state (1-|w|^2 = {deficit:.3e}) with radial derivative w.dw = {wdw:.3e}"
    )


def qfi_sld_oracle(inp: QfiInput, delta: float = SLD_DELTA) -> float:
    """F = sum_ij 2 |<i|d rho|j>|^2 / (p_i + p_j) over the eigenbasis of rho."""
    w = inp.omega.as_tuple()
    rho = 0.5 * (np.eye(2) + sum(c * s for c, s in zip(w, PAULI)))
    drho = 0.5 * sum(c * s for c, s in zip(inp.d_omega, PAULI))
    p, vecs = np.linalg.eigh(rho)
    m = vecs.conj().T @ drho @ vecs
    total = 0.0
    for i in range(2):
        for j in range(2):
            s = p[i] + p[j]
            if s > delta:
                total += 2.0 * abs(m[i, j]) ** 2 / s
    return float(total)


def bloch_derivative(
    model: EnvironmentModel,
    state: InitialState,
    tau: float,
    Omega: float = 1.0,
    mode: str = "analytic",
) -> tuple[float, float, float]:
    """d w / d X with the level spacing Omega held fixed.

    ``mode="fd"`` takes central differences of the closed form with step
    1e-5 * max(1, |X|); it exists for cross-checking.
    """
    if mode == "fd":
        h = 1e-5 * max(1.0, abs(model.X))
        hi = evolve_bloch(EvolutionSpec(state, coefficients(model.with_X(model.X + h)), tau, Omega))
        lo = evolve_bloch(EvolutionSpec(state, coefficients(model.with_X(model.X - h)), tau, Omega))
        return tuple((p - q) / (2.0 * h) for p, q in zip(hi.as_tuple(), lo.as_tuple()))
    if mode != "analytic":
        raise ValueError(f"unknown derivative mode {mode!r}")
    c = coefficients(model)
    spec = EvolutionSpec(state, c, tau, Omega)
    if tau == 0.0:
        return (0.0, 0.0, 0.0)
    w = evolve_bloch(spec)
    ct = math.cos(state.theta)
    d1 = -2.0 * tau * c.dA_dX * w.w1
    d2 = -2.0 * tau * c.dA_dX * w.w2
    if c.A == 0.0:
        # first order in A tau: w3 = cos(theta) - 4 tau (A cos(theta) + B)
        d3 = -4.0 * tau * (c.dA_dX * ct + c.dB_dX)
    else:
        x = 4.0 * c.A * tau
        E = decay(x)
        d3 = -4.0 * tau * c.dA_dX * E * (ct + c.ratio) - c.dratio_dX * growth_complement(x)
    return (d1, d2, d3)


def qfi_parameter(
    model: EnvironmentModel,
    state: InitialState,
    tau: float,
    Omega: float = 1.0,
    mode: str = "analytic",
) -> float:
    """QFI of the model's dimensionless parameter (a or T) at scaled time tau."""
    spec = EvolutionSpec(state, coefficients(model), tau, Omega)
    inp = QfiInput(
        evolve_bloch(spec),
        bloch_derivative(model, state, tau, Omega, mode),
        deficit=purity_deficit(spec),
    )
    return qfi_from_bloch(inp)


def qfi(
    kind: Kind | str,
    X: float,
    tau: float,
    theta: float = 0.0,
    z: Optional[float] = None,
    phi: float = 0.0,
    Omega: float = 1.0,
) -> float:
    """Convenience wrapper around :func:`qfi_parameter` taking plain numbers."""
    return qfi_parameter(EnvironmentModel(Kind(kind), X, z), InitialState(theta, phi), tau, Omega)


def physical_qfi(F_scaled: float, omega0: float) -> float:
    """Convert QFI per unit scaled parameter into QFI per physical unit.

    X_phys = omega0 * X, so F_phys = F_scaled / omega0^2.
    """
    return F_scaled / (omega0 * omega0)
