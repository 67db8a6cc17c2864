"""Closed-form Kossakowski rates for the four bath configurations.

All four kinds share one shape::

    A = 1/2 * coth(x) * (1 - f)
    B = 1/2 * (1 - f)

with x = pi/a for the accelerated detector and x = 1/(2T) for the static
detector in a thermal bath, and f the reflecting-wall correction (f = 0
without a wall). The wall factor is evaluated at the transition frequency,
which is 1 in scaled units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DissipatorCoefficients, DomainError, EnvironmentModel, Kind

COTH_CUTOFF = 350.0


def coth(x: float) -> float:
    """Hyperbolic cotangent for x > 0 without overflow."""
    if x > COTH_CUTOFF:
        return 1.0
    return 1.0 + 2.0 / math.expm1(2.0 * x)


def coth_minus_one(x: float) -> float:
    if x > COTH_CUTOFF:
        return 0.0
    return 2.0 / math.expm1(2.0 * x)


def csch2(x: float) -> float:
    """csch(x)**2 for x > 0; underflows gracefully to 0."""
    e = math.exp(-2.0 * x)
    if e == 0.0:
        return 0.0
    return 4.0 * e / math.expm1(-2.0 * x) ** 2


@dataclass(frozen=True)
class BoundaryFactor:
    """Wall correction f, its X-derivative, and 1 - f computed directly."""

    f: float
    df_dX: float
    complement: float


NO_WALL = BoundaryFactor(0.0, 0.0, 1.0)


def _check_positive(name, value):
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be > 0, got {value!r}")


def _radial_defect(y: float) -> float:
    """y / sqrt(1 + y^2) - asinh(y), without cancellation at small y."""
    if y < 1e-2:
        y2 = y * y
        return y * y2 * (-1.0 / 3.0 + y2 * (3.0 / 10.0 + y2 * (-15.0 / 56.0 + y2 * (35.0 / 144.0))))
    return y / math.sqrt(1.0 + y * y) - math.asinh(y)


def _sine_defect(u: float) -> float:
    """u - sin(u) for u >= 0, accurate near 0."""
    if u < 0.1:
        u2 = u * u
        return u * u2 * (1.0 / 6.0 - u2 * (1.0 / 120.0 - u2 * (1.0 / 5040.0 - u2 * (1.0 / 362880.0 - u2 / 39916800.0))))
    return u - math.sin(u)


def _asinh_defect(y: float) -> float:
    """y - asinh(y) for y >= 0, accurate near 0."""
    if y < 1e-2:
        y2 = y * y
        return y * y2 * (1.0 / 6.0 - y2 * (3.0 / 40.0 - y2 * (5.0 / 112.0 - y2 * (35.0 / 1152.0))))
    return y - math.asinh(y)


def unruh_boundary_factor(a: float, z: float) -> BoundaryFactor:
    """f = sin[(2/a) asinh(a z)] / (2 z sqrt(1 + a^2 z^2)) and df/da."""
    _check_positive("a", a)
    _check_positive("z", z)
    az = a * z
    s2 = 1.0 + az * az
    root = math.sqrt(s2)
    u = 2.0 * math.asinh(az) / a
    du = 2.0 * _radial_defect(az) / (a * a)
    f = math.sin(u) / (2.0 * z * root)
    # 2 z root - sin(u) split into three nonnegative pieces
    num = 2.0 * z * az * az / (root + 1.0) + 2.0 * _asinh_defect(az) / a + _sine_defect(u)
    comp = num / (2.0 * z * root)
    df = (math.cos(u) * du - math.sin(u) * a * z * z / s2) / (2.0 * z * root)
    return BoundaryFactor(f, df, comp)


def thermal_boundary_factor(z: float) -> BoundaryFactor:
    """f = sin(2z)/(2z); independent of the temperature."""
    _check_positive("z", z)
    u = 2.0 * z
    comp = _sine_defect(u) / u
    return BoundaryFactor(1.0 - comp, 0.0, comp)


def _assemble(x: float, dx_dX: float, wall: BoundaryFactor) -> DissipatorCoefficients:
    g = coth(x)
    dg = -csch2(x) * dx_dX
    c = wall.complement
    return DissipatorCoefficients(
        A=0.5 * g * c,
        B=0.5 * c,
        dA_dX=0.5 * (dg * c - g * wall.df_dX),
        dB_dX=0.0 - 0.5 * wall.df_dX,
        gap=0.5 * c * coth_minus_one(x),
    )


def unruh_unbounded(a: float) -> DissipatorCoefficients:
    _check_positive("a", a)
    return _assemble(math.pi / a, -math.pi / (a * a), NO_WALL)


def unruh_boundary(a: float, z: float) -> DissipatorCoefficients:
    wall = unruh_boundary_factor(a, z)
    return _assemble(math.pi / a, -math.pi / (a * a), wall)


def thermal_unbounded(T: float) -> DissipatorCoefficients:
    _check_positive("T", T)
    return _assemble(0.5 / T, -0.5 / (T * T), NO_WALL)


def thermal_boundary(T: float, z: float) -> DissipatorCoefficients:
    _check_positive("T", T)
    return _assemble(0.5 / T, -0.5 / (T * T), thermal_boundary_factor(z))


def boundary_factor(model: EnvironmentModel) -> BoundaryFactor:
    if model.kind is Kind.UNRUH_BOUNDARY:
        return unruh_boundary_factor(model.X, model.z)
    if model.kind is Kind.THERMAL_BOUNDARY:
        return thermal_boundary_factor(model.z)
    return NO_WALL


def coefficients(model: EnvironmentModel) -> DissipatorCoefficients:
    """Rates and X-derivatives for any environment model."""
    kind = model.kind
    if kind is Kind.UNRUH_UNBOUNDED:
        return unruh_unbounded(model.X)
    if kind is Kind.UNRUH_BOUNDARY:
        return unruh_boundary(model.X, model.z)
    if kind is Kind.THERMAL_UNBOUNDED:
        return thermal_unbounded(model.X)
    return thermal_boundary(model.X, model.z)
