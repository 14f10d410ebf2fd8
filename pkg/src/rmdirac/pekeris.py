"""Quadratic-in-u approximation of the centrifugal term 1/r^2.

With ``u(r) = -e^{-2 alpha r} / (1 + e^{-2 alpha r})`` the approximant is

    1/r^2 ~ (D0 + D1 u + D2 u^2) / r_e^2

Two coefficient sets are provided: the closed-form expressions published for
this scheme (``published_coeffs``) and a set obtained by matching value, slope and
curvature of 1/r^2 at ``r_e`` (``matched_coeffs``). The matched set is the
default everywhere downstream; the published D1 does not satisfy the slope
condition and is reported rather than used.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class CoeffSource(enum.Enum):
    PUBLISHED = "published"
    CONTACT_MATCHED = "matched"


@dataclass(frozen=True)
class PekerisCoeffs:
    d0: float
    d1: float
    d2: float
    source: CoeffSource = CoeffSource.CONTACT_MATCHED

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.d0, self.d1, self.d2)):
            raise ValueError("Pekeris coefficients must be finite")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.d0, self.d1, self.d2)


def _check(alpha, r_e):
    if not (alpha > 0 and r_e > 0):
        raise ValueError(f"need alpha > 0 and r_e > 0, got alpha={alpha}, r_e={r_e}")


def u_of_r(r, alpha):
    x = np.exp(-2.0 * alpha * np.asarray(r, dtype=float))
    return -x / (1.0 + x)


def _u_derivatives(r, alpha):
    """u, du/dr, d2u/dr2 at r (scalars)."""
    x = math.exp(-2.0 * alpha * r)
    u = -x / (1.0 + x)
    du = 2.0 * alpha * x / (1.0 + x) ** 2
    d2u = -4.0 * alpha**2 * x * (1.0 - x) / (1.0 + x) ** 3
    return u, du, d2u


def _exp_scaled(log_mag, sign):
    """sign * exp(log_mag), raising instead of returning inf."""
    if log_mag > 709.0:
        raise OverflowError(
            "Pekeris coefficient exceeds the float64 range for this alpha*r_e"
        )
    return sign * math.exp(log_mag)


def published_coeffs(alpha: float, r_e: float) -> PekerisCoeffs:
    """Literal evaluation of the published D0, D1, D2 expressions.

    The factors ``exp(2 alpha r_e) + 1`` are carried in log space so that
    moderate ``alpha r_e`` does not overflow an intermediate; an
    ``OverflowError`` is raised when the coefficient itself is not
    representable.
    """
    _check(alpha, r_e)
    y = alpha * r_e
    em = math.exp(-2.0 * y)
    q = (1.0 + em) / (2.0 * y)
    d0 = 1.0 - q**2 * (8.0 * y / (1.0 + em) - (3.0 + 2.0 * y))
    # log(e^{2y} + 1) without overflow
    log_ep1 = 2.0 * y + math.log1p(em)
    b1 = 3.0 * q - (3.0 + 2.0 * y) * q
    b2 = 3.0 + 2.0 * y - 4.0 * y / (1.0 + em)
    d1 = 0.0 if b1 == 0 else _exp_scaled(log_ep1 + math.log(2.0 * abs(b1)), -math.copysign(1.0, b1))
    d2 = 0.0 if b2 == 0 else _exp_scaled(
        2.0 * log_ep1 + 2.0 * math.log(q) + math.log(abs(b2)), math.copysign(1.0, b2)
    )
    return PekerisCoeffs(d0, d1, d2, CoeffSource.PUBLISHED)


def matched_coeffs(alpha: float, r_e: float) -> PekerisCoeffs:
    """Coefficients matching 1/r^2 and its first two derivatives at ``r_e``.

    The 3x3 contact system is triangular in the shifted basis
    ``a0 + a1 (u - u_e) + a2 (u - u_e)^2``, which is solved first and then
    expanded back to powers of u. Its determinant is ``2 u'(r_e)^3``.
    """
    _check(alpha, r_e)
    u, du, d2u = _u_derivatives(r_e, alpha)
    if du == 0.0:
        raise ArithmeticError("singular contact system: du/dr vanishes at r_e")
    a0 = 1.0
    a1 = -2.0 / (r_e * du)
    a2 = (6.0 / r_e**2 - a1 * d2u) / (2.0 * du**2)
    d2 = a2
    d1 = a1 - 2.0 * a2 * u
    d0 = a0 - a1 * u + a2 * u * u
    if not all(math.isfinite(v) for v in (d0, d1, d2)):
        raise OverflowError("contact-matched coefficients overflow for this alpha*r_e")
    return PekerisCoeffs(d0, d1, d2, CoeffSource.CONTACT_MATCHED)


def centrifugal_approx(r, alpha: float, r_e: float, c: PekerisCoeffs):
    """Approximant ``(D0 + D1 u + D2 u^2) / r_e^2`` at r."""
    u = u_of_r(r, alpha)
    out = (c.d0 + u * (c.d1 + c.d2 * u)) / r_e**2
    return out[()] if np.ndim(out) == 0 else out


def contact_residuals(c: PekerisCoeffs, alpha: float, r_e: float) -> tuple[float, float, float]:
    """Mismatch of value, slope and curvature against 1/r^2 at ``r_e``.

    Each entry is scaled by the corresponding power of ``r_e`` so that the
    three numbers are dimensionless.
    """
    u, du, d2u = _u_derivatives(r_e, alpha)
    f = c.d0 + c.d1 * u + c.d2 * u * u
    f1 = (c.d1 + 2.0 * c.d2 * u) * du
    f2 = (c.d1 + 2.0 * c.d2 * u) * d2u + 2.0 * c.d2 * du * du
    # the approximant is f / r_e^2; targets 1/r_e^2, -2/r_e^3, 6/r_e^4
    return (f - 1.0, f1 * r_e + 2.0, f2 * r_e**2 - 6.0)


def max_deviation(c: PekerisCoeffs, alpha: float, r_e: float, lo=0.5, hi=2.0, points=2001):
    """Largest ``|approx - 1/r^2| * r_e^2`` on ``[lo r_e, hi r_e]``."""
    r = np.linspace(lo * r_e, hi * r_e, points)
    return float(np.max(np.abs(centrifugal_approx(r, alpha, r_e, c) - 1.0 / r**2)) * r_e**2)
