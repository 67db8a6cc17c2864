import itertools
import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unruh_qfi.core import DissipatorCoefficients, DomainError, EnvironmentModel, InitialState, Kind
from unruh_qfi.dynamics import (
    EvolutionSpec,
    evolve_bloch,
    integrate_lindblad,
    purity_deficit,
    steady_state,
)
from unruh_qfi.environments import coefficients, thermal_unbounded, unruh_boundary, unruh_unbounded
from unruh_qfi.validation import random_spec

from conftest import ALL_KINDS, model_for

HALF = DissipatorCoefficients(0.5, 0.5)


def test_zero_time_returns_initial_state():
    w = evolve_bloch(EvolutionSpec(InitialState(0.7, 1.1), HALF, 0.0))
    assert w.as_tuple() == pytest.approx((math.sin(0.7) * math.cos(1.1), math.sin(0.7) * math.sin(1.1), math.cos(0.7)))


def test_long_time_reaches_steady_state():
    c = unruh_unbounded(2.0)
    tau = 700.0 / (4 * c.A) + 1.0
    w = evolve_bloch(EvolutionSpec(InitialState(1.2, 0.4), c, tau))
    assert w.as_tuple() == pytest.approx((0.0, 0.0, -c.B / c.A), rel=1e-15, abs=1e-100)


def test_worked_example():
    w = evolve_bloch(EvolutionSpec(InitialState(0.0), HALF, 1.0))
    assert w.w3 == pytest.approx(float(2 * mpmath.exp(-2) - 1), abs=1e-15)
    assert w.w3 == pytest.approx(-0.729329, abs=1e-6)


def test_zero_rates_freeze_the_polar_angle():
    w = evolve_bloch(EvolutionSpec(InitialState(0.4), DissipatorCoefficients(0.0, 0.0), 3.0))
    assert w.w3 == math.cos(0.4)
    assert w.norm() == pytest.approx(1.0, abs=1e-15)


def test_zero_A_with_positive_B_is_rejected():
    with pytest.raises(DomainError):
        evolve_bloch(EvolutionSpec(InitialState(0.0), DissipatorCoefficients(0.0, 0.1), 1.0))


@pytest.mark.parametrize("tau", [-1.0, math.inf, math.nan])
def test_bad_time_rejected(tau):
    with pytest.raises(DomainError):
        EvolutionSpec(InitialState(0.0), HALF, tau)


def test_steady_state_examples():
    for a in (0.3, 1.0, 4.0):
        assert steady_state(unruh_unbounded(a)).w3 == pytest.approx(-math.tanh(math.pi / a), abs=1e-15)
    assert steady_state(thermal_unbounded(0.5)).w3 == pytest.approx(float(-mpmath.tanh(1)), abs=1e-15)
    assert steady_state(thermal_unbounded(0.5)).w3 == pytest.approx(-0.761594, abs=1e-6)
    for a in (0.3, 1.0, 4.0):
        b = steady_state(unruh_boundary(a, 0.8)).w3
        assert b == pytest.approx(steady_state(unruh_unbounded(a)).w3, rel=1e-15)


def test_steady_state_needs_positive_A():
    with pytest.raises(DomainError):
        steady_state(DissipatorCoefficients(0.0, 0.0))


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_bloch_vector_stays_in_ball(kind):
    for X, theta, tau in itertools.product((0.05, 0.3, 1.0, 5.0), (0.0, 0.5, math.pi / 2, 2.5, math.pi), (0, 0.1, 1, 10, 100)):
        spec = EvolutionSpec(InitialState(theta, 0.3), coefficients(model_for(kind, X)), tau)
        assert evolve_bloch(spec).norm() <= 1.0 + 1e-12


@pytest.mark.parametrize("theta", [0.0, math.pi])
def test_semigroup_on_axis(theta):
    c = unruh_boundary(1.3, 0.6)
    for t1, t2 in ((0.3, 0.9), (2.0, 5.0), (0.01, 17.0)):
        full = evolve_bloch(EvolutionSpec(InitialState(theta), c, t1 + t2)).w3
        mid = evolve_bloch(EvolutionSpec(InitialState(theta), c, t1)).w3
        # continue from the intermediate w3 by linearity of the w3 equation
        E = math.exp(-4 * c.A * t2)
        assert full == pytest.approx(mid * E - c.ratio * (1 - E), abs=1e-12)


def test_pure_rotation_preserves_norm():
    spec = EvolutionSpec(InitialState(1.0, 0.2), DissipatorCoefficients(0.0, 0.0), 4.0, Omega=3.0)
    assert integrate_lindblad(spec).norm() == pytest.approx(1.0, abs=1e-12)


def test_z_axis_is_invariant():
    for tau in (0.5, 3.0, 12.0):
        spec = EvolutionSpec(InitialState(0.0), unruh_unbounded(1.0), tau, Omega=2.0)
        for w in (evolve_bloch(spec), integrate_lindblad(spec)):
            assert w.w1 == 0.0 and w.w2 == 0.0


def test_oracle_equivalence_on_random_specs():
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(100):
        kind, X, z, state, Omega, tau = random_spec(rng)
        spec = EvolutionSpec(state, coefficients(EnvironmentModel(kind, X, z)), tau, Omega)
        a, b = evolve_bloch(spec).as_tuple(), integrate_lindblad(spec, 1e-3).as_tuple()
        worst = max(worst, max(abs(p - q) for p, q in zip(a, b)))
    assert worst <= 1e-8


def test_integrator_rejects_bad_step():
    spec = EvolutionSpec(InitialState(0.0), HALF, 1.0)
    with pytest.raises(DomainError):
        integrate_lindblad(spec, 0.0)


@pytest.mark.parametrize("X", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0])
def test_gibbs_steady_state(X):
    for kind, target in ((Kind.UNRUH_UNBOUNDED, -math.tanh(math.pi / X)), (Kind.THERMAL_UNBOUNDED, -math.tanh(0.5 / X))):
        c = coefficients(EnvironmentModel(kind, X))
        w = evolve_bloch(EvolutionSpec(InitialState(0.9), c, 700.0 / (4 * c.A) + 1.0))
        assert abs(w.w3 - target) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(
    A=st.floats(1e-3, 5.0),
    frac=st.floats(0.0, 1.0),
    theta=st.floats(0.0, 2 * math.pi),
    tau=st.floats(0.0, 50.0),
)
def test_purity_deficit_matches_extended_precision(A, frac, theta, tau):
    c = DissipatorCoefficients(A, A * frac)
    spec = EvolutionSpec(InitialState(theta), c, tau)
    with mpmath.workdps(40):
        At, Bt, t, th = (mpmath.mpf(v) for v in (c.A, c.B, tau, spec.initial.theta))
        e2, e4 = mpmath.exp(-2 * At * t), mpmath.exp(-4 * At * t)
        w3 = mpmath.cos(th) * e4 - Bt / At * (1 - e4)
        exact = 1 - (mpmath.sin(th) * e2) ** 2 - w3**2
    got = purity_deficit(spec)
    assert got >= 0.0
    assert got == pytest.approx(float(exact), rel=1e-10, abs=1e-15)
