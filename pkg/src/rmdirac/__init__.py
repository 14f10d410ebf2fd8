"""Dirac bound states in the Rosen-Morse well under spin and pseudospin symmetry."""

from .model import (
    BoundState,
    PhysicalContext,
    PotentialParams,
    QuantumNumbers,
    Symmetry,
    pseudospin_numbers,
    rosen_morse,
    spin_orbit_numbers,
)
from .pekeris import CoeffSource, PekerisCoeffs, matched_coeffs, published_coeffs

__all__ = [
    "BoundState",
    "CoeffSource",
    "PekerisCoeffs",
    "PhysicalContext",
    "PotentialParams",
    "QuantumNumbers",
    "Symmetry",
    "matched_coeffs",
    "published_coeffs",
    "pseudospin_numbers",
    "rosen_morse",
    "spin_orbit_numbers",
]
