"""Closed-form Klein-Gordon bound states of the q-deformed modified
Pöschl-Teller well, with finite-difference and quadrature cross-checks."""

from .errors import (
    ConvergenceError,
    DomainError,
    KGError,
    MultipleRootsError,
    NoBoundState,
    ParameterError,
    PoleError,
)
from .potential import ModelParams, PTParams, from_special_case, potential_value
from .spectrum import EnergyLevel, Spectrum, enumerate_spectrum, solve_level
from .wavefunction import GridSpec, NormalizedState, make_pt_state, make_state

__all__ = [
    "ConvergenceError",
    "DomainError",
    "EnergyLevel",
    "GridSpec",
    "KGError",
    "ModelParams",
    "MultipleRootsError",
    "NoBoundState",
    "NormalizedState",
    "PTParams",
    "ParameterError",
    "PoleError",
    "Spectrum",
    "enumerate_spectrum",
    "from_special_case",
    "make_pt_state",
    "make_state",
    "potential_value",
    "solve_level",
]
