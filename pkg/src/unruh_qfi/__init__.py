"""Quantum Fisher information of acceleration and temperature for a
two-level detector in open-system (Lindblad) dynamics, with and without a
reflecting boundary."""
from .analysis import (
    PeakReport,
    QfiSurface,
    SweepAxis,
    find_peaks,
    optimal_parameter,
    sweep,
    theta_amplitude,
)
from .core import (
    BlochVector,
    DissipatorCoefficients,
    DomainError,
    EnvironmentModel,
    InitialState,
    Kind,
    ScaledTime,
    initial_bloch,
    to_dimensionless,
)
from .dynamics import EvolutionSpec, evolve_bloch, integrate_lindblad, steady_state
from .environments import (
    coefficients,
    thermal_boundary,
    thermal_unbounded,
    unruh_boundary,
    unruh_unbounded,
)
from .qfi import QfiInput, bloch_derivative, qfi, qfi_from_bloch, qfi_parameter, qfi_sld_oracle

__version__ = "0.1.0"
