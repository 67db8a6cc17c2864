"""End-to-end acceptance criteria, one recorded pass/fail line each."""
import itertools
import math
import random

import numpy as np

from unruh_qfi.analysis import SweepAxis, find_peaks, profile, slice_peak_counts, sweep, theta_amplitude
from unruh_qfi.cli import main
from unruh_qfi.core import BlochVector, EnvironmentModel, InitialState, Kind
from unruh_qfi.dynamics import EvolutionSpec, evolve_bloch
from unruh_qfi.environments import coefficients
from unruh_qfi.qfi import QfiInput, bloch_derivative, qfi_from_bloch, qfi_parameter, qfi_sld_oracle
from unruh_qfi.validation import (
    check_boundary_far,
    check_boundary_pi2,
    check_boundary_wall,
    check_gibbs,
    check_invariance,
    check_oracle,
    check_reparam,
    reference_fd_derivative,
)

from conftest import ALL_KINDS, model_for

A_AXIS = SweepAxis("a", 0.05, 10.0, 100)
T_AXIS = SweepAxis("T", 0.05, 5.0, 100)
TAU_UNBOUNDED = SweepAxis("tau", 0.05, 10.0, 100)
TAU_BOUNDARY = SweepAxis("tau", 0.1, 40.0, 100)

# the dense parameter grid shared with the rate-coefficient invariants
STANDARD_X = np.geomspace(0.01, 50.0, 40)
STANDARD_Z = np.geomspace(1e-4, 100.0, 25)
STANDARD_TAU = (0.5, 2.0, 5.0, 10.0)
STANDARD_THETA = (0.0, math.pi / 4, math.pi / 2, math.pi)


def test_oracle_equivalence(criterion):
    r = check_oracle(1e-8, n=100, step=1e-3)
    criterion(1, "closed-form evolution vs RK4 integration", r.passed, f"max |dw| = {r.observed:.3e}, bound 1e-8")


def test_derivative_correctness(criterion):
    worst, failures, total = 0.0, 0, 0
    worst_at = None
    for kind in ALL_KINDS:
        zs = STANDARD_Z if kind.has_boundary else (None,)
        for X, z, tau, theta in itertools.product(STANDARD_X, zs, STANDARD_TAU, STANDARD_THETA):
            an = bloch_derivative(EnvironmentModel(kind, X, z), InitialState(theta), tau)
            fd = reference_fd_derivative(kind, X, tau, theta, z)
            err, size = math.dist(an, fd), math.hypot(*an)
            total += 1
            bad = err > 1e-6 * size if size >= 1e-10 else err > 1e-10
            rel = err / size if size >= 1e-10 else err / 1e-10 * 1e-6
            if bad:
                failures += 1
            if rel > worst:
                worst, worst_at = rel, (kind.value, float(X), z, tau, theta)
    criterion(
        2,
        "analytic dw/dX vs central differences (step 1e-5 max(1,|X|))",
        failures == 0,
        f"{failures}/{total} points out of tolerance, worst relative {worst:.2e} at {worst_at}",
    )


def test_qfi_oracle_equivalence(criterion):
    rng = random.Random(3)
    worst = 0.0
    inputs = []
    for _ in range(1000):
        r = rng.uniform(0.0, 0.999)
        v = [rng.gauss(0, 1) for _ in range(3)]
        n = math.hypot(*v)
        inputs.append(QfiInput(BlochVector(*(r * c / n for c in v)), [rng.gauss(0, 1) for _ in range(3)]))
    for a, tau in itertools.product(A_AXIS.values(), TAU_UNBOUNDED.values()):
        m, st = EnvironmentModel(Kind.UNRUH_UNBOUNDED, a), InitialState(0.0)
        spec = EvolutionSpec(st, coefficients(m), tau)
        inputs.append(QfiInput(evolve_bloch(spec), bloch_derivative(m, st, tau)))
    for inp in inputs:
        F1, F2 = qfi_from_bloch(inp), qfi_sld_oracle(inp)
        worst = max(worst, abs(F1 - F2) / max(1e-9, 1e-9 * F1))
    criterion(3, "Bloch-form QFI vs SLD eigendecomposition", worst <= 1.0, f"max |dF| / max(1e-9, 1e-9 F) = {worst:.3e}")


def test_zero_information_start(criterion):
    worst = max(
        qfi_parameter(model_for(kind, X), InitialState(theta), 0.0)
        for kind in ALL_KINDS
        for theta in (0.0, math.pi / 4, math.pi / 2, math.pi)
        for X in (0.5, 1.0, 2.0)
    )
    criterion(4, "F = 0 at tau = 0", worst <= 1e-12, f"max F = {worst:.3e}")


def test_reparameterization(criterion):
    r = check_reparam(1e-9)
    criterion(5, "F_a = F_T / (2 pi)^2 at T = a / 2 pi", r.passed, f"max relative = {r.observed:.3e}")


def test_gibbs_steady_state(criterion):
    r = check_gibbs(1e-12)
    criterion(6, "steady-state polarisation is -tanh(1/2T)", r.passed, f"max deviation = {r.observed:.3e}")


def test_phase_and_spacing_invariance(criterion):
    r = check_invariance(1e-12, n=50)
    criterion(7, "F independent of Omega and phi", r.passed, f"max spread = {r.observed:.3e}")


def test_single_acceleration_peak(criterion):
    F = profile(Kind.UNRUH_UNBOUNDED, A_AXIS, {"theta": 0.0, "tau": 5.0})
    report = find_peaks(A_AXIS.values(), F)
    ok = report.count == 1 and F[0] < 0.1 * report.peaks[0].value and F[-1] < 0.1 * report.peaks[0].value
    loc = report.peaks[0].location if report.peaks else float("nan")
    criterion(8, "one interior acceleration peak at tau = 5", ok, f"{report.count} peak(s), at a = {loc:.4f}, ends {F[0]:.2e}, {F[-1]:.2e}")


def test_boundary_enhancement_and_double_peaks(criterion):
    near = sweep(Kind.UNRUH_BOUNDARY, TAU_BOUNDARY, A_AXIS, {"theta": 0.0, "z": 0.01})
    free = sweep(Kind.UNRUH_UNBOUNDED, TAU_BOUNDARY, A_AXIS, {"theta": 0.0})
    enhanced = near.values.max() > free.values.max()
    far = sweep(Kind.UNRUH_BOUNDARY, TAU_BOUNDARY, A_AXIS, {"theta": 0.0, "z": 1.0})
    counts = slice_peak_counts(far)
    doubles = TAU_BOUNDARY.values()[counts == 2]
    criterion(
        9,
        "wall at z = 0.01 raises the peak; z = 1 shows two peaks",
        enhanced and doubles.size > 0,
        f"max F z=0.01: {near.values.max():.4g} vs unbounded {free.values.max():.4g}; "
        f"two-peak slices at z=1: {doubles.size} (first tau {doubles[0] if doubles.size else float('nan'):.3g})",
    )


def test_thermal_boundary_peaks(criterion):
    surfaces = {z: sweep(Kind.THERMAL_BOUNDARY, TAU_BOUNDARY, T_AXIS, {"theta": 0.0, "z": z}) for z in (0.01, 0.5, 1.0)}
    worst = {z: int(slice_peak_counts(s).max()) for z, s in surfaces.items()}
    single = all(c <= 1 for c in worst.values())
    peaks = {z: s.values.max(axis=1) for z, s in surfaces.items()}
    early = (peaks[0.01] < peaks[0.5]) & (peaks[0.01] < peaks[1.0])
    first = TAU_BOUNDARY.values()[early]
    criterion(
        10,
        "thermal wall: at most one temperature peak; z = 0.01 smaller early on",
        single and bool(early[0]),
        f"max peaks per slice {worst}; z=0.01 below both from tau = {first[0] if first.size else float('nan'):.3g}"
        f" ({int(early.sum())} slices)",
    )


def test_periodicity_fading(criterion):
    parts = []
    ok = True
    for label, kind_u, kind_b, axis in (
        ("acceleration", Kind.UNRUH_UNBOUNDED, Kind.UNRUH_BOUNDARY, A_AXIS),
        ("temperature", Kind.THERMAL_UNBOUNDED, Kind.THERMAL_BOUNDARY, T_AXIS),
    ):
        du = [theta_amplitude(kind_u, tau, axis) for tau in (0.1, 5.0, 9.0)]
        db = [theta_amplitude(kind_b, tau, axis, z=0.5) for tau in (0.1, 9.0)]
        fades = du[0] > du[1] > du[2]
        protected = db[1] / db[0] > du[2] / du[0]
        ok = ok and fades and protected
        parts.append(f"{label}: unbounded {du[0]:.3g} > {du[1]:.3g} > {du[2]:.3g}, ratio {du[2] / du[0]:.3g} vs wall {db[1] / db[0]:.3g}")
    criterion(11, "theta dependence fades, more slowly near a wall", ok, "; ".join(parts))


def test_boundary_limits(criterion):
    r = [check_boundary_pi2(1e-14), check_boundary_far(1e-3), check_boundary_wall(1e-7)]
    criterion(12, "thermal z = pi/2, Unruh z = 100 and z = 1e-8 limits", all(c.passed for c in r), ", ".join(f"{c.name} {c.observed:.2e}" for c in r))


def test_figure_determinism(criterion, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    codes = [main(["figure", "fig1", "left", "--out", str(p)]) for p in (a, b)]
    ok = codes == [0, 0] and a.read_bytes() == b.read_bytes()
    criterion(13, "fig1 left is byte-identical across runs", ok, f"exit codes {codes}, {a.stat().st_size} bytes")
