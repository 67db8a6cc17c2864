"""Shared value types and the dimensionless scaling conventions.

Every quantity downstream of this module is dimensionless:

* scaled time        tau = Gamma0 * t,  Gamma0 = mu**2 * omega0 / (2 pi)
* acceleration       a   = a_phys / omega0
* temperature        T   = T_phys / omega0
* wall distance      z   = z_phys * omega0

Rates A, B are expressed in units of Gamma0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """A parameter lies outside the physical domain of an operation."""


class Kind(str, enum.Enum):
    UNRUH_UNBOUNDED = "unruh_unbounded"
    UNRUH_BOUNDARY = "unruh_boundary"
    THERMAL_UNBOUNDED = "thermal_unbounded"
    THERMAL_BOUNDARY = "thermal_boundary"

    @property
    def has_boundary(self) -> bool:
        return self in (Kind.UNRUH_BOUNDARY, Kind.THERMAL_BOUNDARY)

    @property
    def is_thermal(self) -> bool:
        return self in (Kind.THERMAL_UNBOUNDED, Kind.THERMAL_BOUNDARY)

    @property
    def parameter(self) -> str:
        """Name of the estimated parameter: ``"T"`` or ``"a"``."""
        return "T" if self.is_thermal else "a"


@dataclass(frozen=True)
class BlochVector:
    w1: float
    w2: float
    w3: float

    def norm(self) -> float:
        return math.sqrt(self.w1 * self.w1 + self.w2 * self.w2 + self.w3 * self.w3)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w1, self.w2, self.w3)


@dataclass(frozen=True)
class InitialState:
    """Pure state cos(theta/2)|+> + exp(i phi) sin(theta/2)|->.

    Angles are reduced into [0, 2 pi) on construction.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", _wrap_angle(self.theta))
        object.__setattr__(self, "phi", _wrap_angle(self.phi))


def _wrap_angle(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"angle must be finite, got {x!r}")
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    # fmod of values just below a multiple of 2 pi can round up to 2 pi
    return 0.0 if y >= TWO_PI else y


@dataclass(frozen=True)
class DissipatorCoefficients:
    """Kossakowski rates A, B (units of Gamma0) and their derivatives in X.

    ``gap`` is A - B evaluated without cancellation; it is what keeps the
    near-pure steady states at small a or T resolvable.
    """

    A: float
    B: float
    dA_dX: float = 0.0
    dB_dX: float = 0.0
    gap: Optional[float] = None

    def __post_init__(self):
        if self.gap is None:
            object.__setattr__(self, "gap", self.A - self.B)

    @property
    def ratio(self) -> float:
        """Steady-state depolarisation B/A (requires A > 0)."""
        return self.B / self.A

    @property
    def dratio_dX(self) -> float:
        return (self.A * self.dB_dX - self.B * self.dA_dX) / (self.A * self.A)


@dataclass(frozen=True)
class EnvironmentModel:
    """Which bath supplies the rates, with its dimensionless parameters.

    ``X`` is the estimated parameter (a for Unruh kinds, T for thermal
    kinds); ``z`` is the wall distance, required exactly for boundary kinds.
    """

    kind: Kind
    X: float
    z: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not (math.isfinite(self.X) and self.X > 0.0):
            raise DomainError(f"{self.kind.parameter} must be > 0, got {self.X!r}")
        if self.kind.has_boundary:
            if self.z is None or not (math.isfinite(self.z) and self.z > 0.0):
                raise DomainError(f"z must be > 0 for {self.kind.value}, got {self.z!r}")
        elif self.z is not None:
            raise DomainError(f"{self.kind.value} takes no wall distance z")

    def with_X(self, X: float) -> "EnvironmentModel":
        return EnvironmentModel(self.kind, X, self.z)


@dataclass(frozen=True)
class ScaledTime:
    tau: float

    def __post_init__(self):
        if not (self.tau >= 0.0 and math.isfinite(self.tau)):
            raise DomainError(f"scaled time must be finite and >= 0, got {self.tau!r}")

    def __float__(self) -> float:
        return self.tau


def emission_rate(mu: float, omega0: float) -> float:
    """Spontaneous emission rate Gamma0 = mu^2 omega0 / 2 pi."""
    return mu * mu * omega0 / TWO_PI


def to_dimensionless(
    tau_phys: float,
    a_or_T_phys: float,
    z_phys: Optional[float],
    mu: float,
    omega0: float,
    kind: Kind | str = Kind.UNRUH_UNBOUNDED,
) -> tuple[ScaledTime, EnvironmentModel]:
    """Convert physical (natural-unit) inputs into scaled time and a model.

    ``z_phys`` is ignored for unbounded kinds.
    """
    if not omega0 > 0.0:
        raise DomainError(f"omega0 must be > 0, got {omega0!r}")
    if mu == 0.0:
        raise DomainError("coupling mu must be nonzero")
    if tau_phys < 0.0:
        raise DomainError(f"tau must be >= 0, got {tau_phys!r}")
    kind = Kind(kind)
    tau = ScaledTime(emission_rate(mu, omega0) * tau_phys)
    z = z_phys * omega0 if kind.has_boundary else None
    return tau, EnvironmentModel(kind, a_or_T_phys / omega0, z)


def to_physical(tau: float, X: float, z: Optional[float], mu: float, omega0: float):
    """Inverse of :func:`to_dimensionless`: returns (t, a_or_T, z) in physical units."""
    if not omega0 > 0.0 or mu == 0.0:
        raise DomainError("need omega0 > 0 and mu != 0")
    return (
        tau / emission_rate(mu, omega0),
        X * omega0,
        None if z is None else z / omega0,
    )


def initial_bloch(state: InitialState) -> BlochVector:
    st = math.sin(state.theta)
    return BlochVector(st * math.cos(state.phi), st * math.sin(state.phi), math.cos(state.theta))
