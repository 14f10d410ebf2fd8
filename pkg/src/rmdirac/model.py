"""Domain types, quantum-number algebra and the Rosen-Morse potential.

Units are whatever the caller uses consistently: energies, lengths and
``hbarc`` are taken at face value and never converted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class Symmetry(enum.Enum):
    SPIN = "spin"
    PSEUDOSPIN = "pseudospin"


def _finite(value) -> bool:
    return bool(np.isfinite(value))


@dataclass(frozen=True)
class PotentialParams:
    """Rosen-Morse well ``-v1 sech^2(alpha r) + v2 tanh(alpha r)``.

    ``r_e`` is the reference radius of the centrifugal approximation and is
    not tied to the potential minimum. ``v2`` may be complex only for the
    PT-symmetric variant.
    """

    v1: float
    v2: complex | float
    alpha: float
    r_e: float

    def __post_init__(self):
        if not (self.alpha > 0 and _finite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        if not (self.r_e > 0 and _finite(self.r_e)):
            raise ValueError(f"r_e must be positive and finite, got {self.r_e!r}")
        if not (_finite(self.v1) and _finite(self.v2)):
            raise ValueError("v1 and v2 must be finite")

    @property
    def is_complex(self) -> bool:
        return isinstance(self.v2, complex)


@dataclass(frozen=True)
class PhysicalContext:
    """Rest energy, hbar*c and the symmetry branch with its constant.

    ``sym_const`` is C_s on the spin branch and C_ps on the pseudospin branch.
    """

    mc2: float
    hbarc: float = 1.0
    symmetry: Symmetry = Symmetry.SPIN
    sym_const: float = 0.0

    def __post_init__(self):
        if not (self.mc2 > 0 and _finite(self.mc2)):
            raise ValueError(f"mc2 must be positive and finite, got {self.mc2!r}")
        if not (self.hbarc > 0 and _finite(self.hbarc)):
            raise ValueError(f"hbarc must be positive and finite, got {self.hbarc!r}")
        if not _finite(self.sym_const):
            raise ValueError("sym_const must be finite")


def spin_orbit_numbers(kappa: int) -> tuple[int, int]:
    """Return ``(l, omega)`` with ``omega = kappa (kappa + 1) = l (l + 1)``."""
    kappa = _check_kappa(kappa)
    l = kappa if kappa > 0 else -kappa - 1
    return l, kappa * (kappa + 1)


def pseudospin_numbers(kappa: int) -> tuple[int, int]:
    """Return ``(l_tilde, omega_tilde)`` with ``omega_tilde = kappa (kappa - 1)``."""
    kappa = _check_kappa(kappa)
    l_tilde = kappa - 1 if kappa > 0 else -kappa
    return l_tilde, kappa * (kappa - 1)


def _check_kappa(kappa) -> int:
    if isinstance(kappa, bool) or int(kappa) != kappa:
        raise ValueError(f"kappa must be an integer, got {kappa!r}")
    kappa = int(kappa)
    if kappa == 0:
        raise ValueError("kappa = 0 is not a valid Dirac spin-orbit quantum number")
    return kappa


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    kappa: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "kappa", _check_kappa(self.kappa))

    @property
    def l(self) -> int:
        return spin_orbit_numbers(self.kappa)[0]

    @property
    def omega(self) -> int:
        return spin_orbit_numbers(self.kappa)[1]

    @property
    def l_tilde(self) -> int:
        return pseudospin_numbers(self.kappa)[0]

    @property
    def omega_tilde(self) -> int:
        return pseudospin_numbers(self.kappa)[1]

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5

    def centrifugal_strength(self, symmetry: Symmetry) -> int:
        """omega on the spin branch, omega_tilde on the pseudospin branch."""
        return self.omega if symmetry is Symmetry.SPIN else self.omega_tilde


@dataclass(frozen=True)
class BoundState:
    """A converged root of an energy equation with its NU exponents.

    ``epsilon`` and ``delta`` are the decay exponent and the exponent at the
    second singular point for the branch that produced the root. ``norm`` is
    filled in once a normalization has been computed. ``nu_residual`` is the
    parametric NU energy relation evaluated at ``energy``; it vanishes only on
    the branch of the squared energy equation the NU construction produces.
    """

    energy: float
    epsilon: float
    delta: float
    qn: QuantumNumbers
    branch: str
    norm: float | None = None
    residual: float = 0.0
    nu_residual: float = math.nan
    symmetry: Symmetry = field(default=Symmetry.SPIN)

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"bound state requires epsilon > 0, got {self.epsilon}")
        if not self.delta > 0:
            raise ValueError(f"bound state requires delta > 0, got {self.delta}")


def rosen_morse(r, p: PotentialParams):
    """Evaluate ``-v1 sech^2(alpha r) + v2 tanh(alpha r)`` (exponential form)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("rosen_morse requires r > 0")
    x = np.exp(-2.0 * p.alpha * r)
    out = -4.0 * p.v1 * x / (1.0 + x) ** 2 + p.v2 * (1.0 - x) / (1.0 + x)
    return out[()] if out.ndim == 0 else out


def rosen_morse_hyperbolic(r, p: PotentialParams):
    """Same potential written with sech/tanh; kept as an independent evaluation."""
    r = np.asarray(r, dtype=float)
    out = -p.v1 / np.cosh(p.alpha * r) ** 2 + p.v2 * np.tanh(p.alpha * r)
    return out[()] if out.ndim == 0 else out
