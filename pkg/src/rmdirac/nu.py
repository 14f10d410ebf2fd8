"""Parametric Nikiforov-Uvarov solver and its Rosen-Morse instantiation.

A problem is the hypergeometric-type equation

    [r (c3 - c4 r)]^2 psi'' + r (c3 - c4 r)(c1 - c2 r) psi'
        + (-xi1 r^2 + xi2 r - xi3) psi = 0

from which twelve derived constants c5..c16 give the key polynomials, the
quantization condition and the wavefunctions. Square roots of c9 and c10
always take the non-negative branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .model import PhysicalContext, PotentialParams, QuantumNumbers, Symmetry
from .pekeris import PekerisCoeffs
from .specfun import jacobi_p, laguerre_l


class NUBranchError(ValueError):
    """c9 or c10 is negative, so the square roots in the NU construction are not real."""

    def __init__(self, name: str, value: float):
        super().__init__(f"no real NU branch: {name} = {value!r} < 0")
        self.name = name
        self.value = value


class NUConditionError(ValueError):
    """The NU negativity condition tau' < 0 fails."""


class OutsideWindowError(ValueError):
    """epsilon^2 <= 0: the energy lies outside the bound-state window."""


@dataclass(frozen=True)
class NUProblem:
    c1: float
    c2: float
    c3: float
    c4: float
    xi1: float
    xi2: float
    xi3: float

    def __post_init__(self):
        vals = (self.c1, self.c2, self.c3, self.c4, self.xi1, self.xi2, self.xi3)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("NU coefficients must be finite")
        if not self.c3 > 0:
            raise ValueError(f"c3 must be positive, got {self.c3}")


@dataclass(frozen=True)
class NUDerived:
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float
    c14: float
    c15: float
    c16: float


def derive(p: NUProblem) -> NUDerived:
    """Compute c5..c16. With c4 = 0 the constants c12 and c14 are infinite."""
    c5 = 0.5 * (p.c3 - p.c1)
    c6 = 0.5 * (p.c2 - 2.0 * p.c4)
    c7 = c6 * c6 + p.xi1
    c8 = 2.0 * c5 * c6 - p.xi2
    c9 = c5 * c5 + p.xi3
    c10 = p.c4 * (p.c3 * c8 + p.c4 * c9) + p.c3**2 * c7
    if c9 < 0:
        raise NUBranchError("c9", c9)
    if c10 < 0:
        raise NUBranchError("c10", c10)
    s9 = math.sqrt(c9)
    s10 = math.sqrt(c10)
    c11 = 2.0 * s9 / p.c3
    c13 = (c5 + s9) / p.c3
    c15 = 2.0 * s10 / p.c3
    c16 = (s10 - p.c4 * c5 - p.c3 * c6) / p.c3
    if p.c4 == 0.0:
        c12 = c14 = math.inf
    else:
        c12 = 2.0 * s10 / (p.c3 * p.c4)
        c14 = (s10 - p.c4 * c5 - p.c3 * c6) / (p.c3 * p.c4)
    return NUDerived(c5, c6, c7, c8, c9, c10, c11, c12, c13, c14, c15, c16)


@dataclass(frozen=True)
class KeyPolynomials:
    pi: Polynomial
    k: float
    tau: Polynomial


def key_polynomials(p: NUProblem, d: NUDerived) -> KeyPolynomials:
    s9 = math.sqrt(d.c9)
    s10 = math.sqrt(d.c10)
    pi = Polynomial([d.c5 + s9, -(p.c4 * s9 + s10 - p.c3 * d.c6) / p.c3])
    k = -(p.c3 * d.c8 + 2.0 * p.c4 * d.c9 + 2.0 * math.sqrt(d.c9 * d.c10)) / p.c3**2
    slope = -2.0 * (p.c3 * p.c4 + p.c4 * s9 + s10) / p.c3
    tau = Polynomial([p.c3 + 2.0 * s9, slope])
    if not slope < 0:
        raise NUConditionError(f"NU negativity condition violated: tau' = {slope}")
    return KeyPolynomials(pi, k, tau)


def energy_relation(p: NUProblem, d: NUDerived, n: int) -> float:
    """Left side of the parametric quantization condition; zero on a solution."""
    s9 = math.sqrt(d.c9)
    s10 = math.sqrt(d.c10)
    return (
        p.c2 * n
        - (2 * n + 1) * d.c6
        + (2 * n + 1) * (s10 + p.c4 * s9) / p.c3
        + n * (n - 1) * p.c4
        + (p.c3 * d.c8 + 2.0 * p.c4 * d.c9 + 2.0 * math.sqrt(d.c9 * d.c10)) / p.c3**2
    )


def wavefunction_factory(p: NUProblem, d: NUDerived, n: int):
    """Unnormalized ``z -> z^c13 (c3 - c4 z)^c14 P_n^{(c11, c12)}(c3 - 2 c4 z)``."""
    for name, value, bound in (("c11", d.c11, -1.0), ("c12", d.c12, -1.0)):
        if not value > bound:
            raise ValueError(f"{name} = {value} must exceed {bound}")
    for name, value in (("c13", d.c13), ("c14", d.c14)):
        if not value > 0:
            raise ValueError(f"{name} = {value} must be positive for a normalizable solution")
    if math.isinf(d.c12):
        raise ValueError("c4 = 0: use laguerre_limit instead")

    def psi(z):
        z = np.asarray(z, dtype=float)
        out = z**d.c13 * (p.c3 - p.c4 * z) ** d.c14 * jacobi_p(n, d.c11, d.c12, p.c3 - 2.0 * p.c4 * z)
        return out[()] if np.ndim(out) == 0 else out

    return psi


def laguerre_limit(p: NUProblem, d: NUDerived, n: int, r):
    """``exp(-c16 r) L_n^{c11}(c15 r)``, the c4 -> 0 form of the wavefunction.

    The ``r^c13`` prefactor is not part of this form and stays with the caller.
    """
    if p.c4 != 0.0:
        raise ValueError("laguerre_limit requires c4 = 0")
    r = np.asarray(r, dtype=float)
    out = np.exp(-d.c16 * r) * laguerre_l(n, d.c11, d.c15 * r)
    return out[()] if out.ndim == 0 else out


def _effective_d1(coeffs: PekerisCoeffs) -> float:
    # in z = -exp(-2 alpha r) the approximant reads D0 + D1 z/(1-z) + D2 (z/(1-z))^2,
    # so D1 enters the z^1 and z^2 coefficients with a minus sign
    return -coeffs.d1


def rm_xi(params: PotentialParams, context: PhysicalContext, qn: QuantumNumbers,
          energy, coeffs: PekerisCoeffs, symmetry: Symmetry | None = None):
    """(beta1, beta2, epsilon^2) for the Rosen-Morse problem in z = -exp(-2 alpha r).

    Works with complex ``energy`` or ``params.v2``; returns plain floats when
    everything is real.
    """
    symmetry = symmetry or context.symmetry
    a2 = 4.0 * params.alpha**2
    hc2 = context.hbarc**2
    mc2 = context.mc2
    d0, d2 = coeffs.d0, coeffs.d2
    d1 = _effective_d1(coeffs)
    v1, v2 = params.v1, params.v2
    if symmetry is Symmetry.SPIN:
        w = qn.omega / params.r_e**2
        a = (mc2 + energy - context.sym_const) / hc2
        eps2 = (w * d0 + a * (mc2 - energy + v2)) / a2
        beta1 = (w * (d0 + d1 + d2) + a * (mc2 - energy - v2)) / a2
        beta2 = (w * (2.0 * d0 + d1) + 2.0 * a * (mc2 - energy - 2.0 * v1)) / a2
    else:
        w = qn.omega_tilde / params.r_e**2
        cps = context.sym_const
        bracket = energy**2 - mc2**2 - (mc2 + energy) * cps
        eps2 = (w * d0 - (bracket + (mc2 - energy + cps) * v2) / hc2) / a2
        beta1 = (w * (d0 + d1 + d2) - (bracket - (mc2 - energy + cps) * v2) / hc2) / a2
        beta2 = (w * (2.0 * d0 + d1) - 2.0 * (bracket - 2.0 * (mc2 - energy + cps) * v1) / hc2) / a2
    return beta1, beta2, eps2


def rosen_morse_instance(params: PotentialParams, context: PhysicalContext, qn: QuantumNumbers,
                         energy: float, coeffs: PekerisCoeffs,
                         symmetry: Symmetry | None = None) -> NUProblem:
    """NU problem (c1..c4 = 1) for the spin or pseudospin Rosen-Morse equation at ``energy``."""
    beta1, beta2, eps2 = rm_xi(params, context, qn, energy, coeffs, symmetry)
    if not eps2 > 0:
        raise OutsideWindowError(f"epsilon^2 = {eps2} <= 0 at E = {energy}")
    return NUProblem(1.0, 1.0, 1.0, 1.0, beta1, beta2, eps2)
