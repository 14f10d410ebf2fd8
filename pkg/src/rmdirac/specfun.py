"""Special functions used by the closed-form solutions.

Everything here works on real arguments. ``hyp2f1`` and ``jacobi_p`` accept
numpy arrays for the argument so wavefunctions can be sampled on grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

SERIES_RTOL = 1e-16
SERIES_MAX_TERMS = 1_000_000


class SeriesError(ArithmeticError):
    """A hypergeometric series was requested outside its convergence regime."""


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def pochhammer(x: float, m: int) -> float:
    """Rising factorial ``x (x+1) ... (x+m-1)``; ``(x)_0 = 1``."""
    if m < 0 or int(m) != m:
        raise ValueError(f"pochhammer order must be a non-negative integer, got {m}")
    out = 1.0
    for k in range(int(m)):
        out *= x + k
    return out


def _nonpos_int(v) -> bool:
    return v <= 0 and float(v).is_integer()


def jacobi_p(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence."""
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a non-negative integer, got {n}")
    if not (a > -1 and b > -1):
        raise ValueError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev[()] if p_prev.ndim == 0 else p_prev
    p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    ab = a + b
    for k in range(2, int(n) + 1):
        c0 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        c1 = (2.0 * k + ab - 1.0) * ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * x + a * a - b * b)
        c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + ab)
        p_prev, p = p, (c1 * p - c2 * p_prev) / c0
    return p[()] if p.ndim == 0 else p


def laguerre_l(n: int, a: float, x):
    """Generalized Laguerre polynomial L_n^{(a)}(x) by recurrence."""
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a non-negative integer, got {n}")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev[()] if l_prev.ndim == 0 else l_prev
    l = 1.0 + a - x
    for k in range(2, int(n) + 1):
        l_prev, l = l, ((2.0 * k - 1.0 + a - x) * l - (k - 1.0 + a) * l_prev) / k
    return l[()] if l.ndim == 0 else l


def hyp2f1(a: float, b: float, c: float, z):
    """Gauss series 2F1(a, b; c; z) by partial sums with a term-ratio update.

    Valid for |z| < 1, or for any z when a or b is a non-positive integer
    (the series then terminates). Summation stops at termination or when
    every term drops below 1e-16 of its running sum; hitting the 1e6-term cap
    raises ``SeriesError``.
    """
    z = np.asarray(z, dtype=float)
    terminating = _nonpos_int(a) or _nonpos_int(b)
    n_terms = int(-min(a if _nonpos_int(a) else 0, b if _nonpos_int(b) else 0)) if terminating else None
    if _nonpos_int(c) and not (terminating and n_terms < -c + 1):
        raise SeriesError(f"2F1 undefined: c = {c} is a non-positive integer")
    if not terminating and np.any(np.abs(z) >= 1.0):
        raise SeriesError("non-terminating 2F1 requires |z| < 1")

    if terminating and n_terms > 0 and np.any(z > 0):
        # positive z makes the terms alternate and cancel; sum those points exactly
        out = _hyp2f1_sum(a, b, c, np.where(z > 0, 0.0, z), n_terms)
        pos = z > 0
        if out.ndim == 0:
            out = np.asarray(_hyp2f1_exact(a, b, c, float(z), n_terms))
        else:
            out[pos] = [_hyp2f1_exact(a, b, c, float(v), n_terms) for v in z[pos]]
        return out[()] if out.ndim == 0 else out
    return _hyp2f1_sum(a, b, c, z, n_terms if terminating else None)


def _hyp2f1_exact(a, b, c, z, n_terms):
    """Terminating series in rational arithmetic on the binary values of the inputs."""
    a, b, c, z = (Fraction(float(v)) for v in (a, b, c, z))
    total = term = Fraction(1)
    for p in range(n_terms):
        term = term * (a + p) * (b + p) / ((c + p) * (p + 1)) * z
        total += term
    return float(total)


def _hyp2f1_sum(a, b, c, z, n_terms):
    terminating = n_terms is not None
    total = np.ones_like(z)
    term = np.ones_like(z)
    p = 0
    while True:
        if terminating and p >= n_terms:
            break
        if p >= SERIES_MAX_TERMS:
            raise SeriesError("2F1 series did not converge within the term cap")
        term = term * ((a + p) * (b + p) / ((c + p) * (p + 1.0))) * z
        total = total + term
        p += 1
        if not terminating and np.all(np.abs(term) <= SERIES_RTOL * np.abs(total)):
            break
    return total[()] if total.ndim == 0 else total


def hyp3f2_terminating(a1: float, a2: float, a3: float, b1: float, b2: float, z: float) -> float:
    """Terminating 3F2(a1, a2, a3; b1, b2; z) at any real z.

    One of the numerator parameters must be a non-positive integer.
    """
    stops = [-int(v) for v in (a1, a2, a3) if _nonpos_int(v)]
    if not stops:
        raise SeriesError("3F2 is only evaluated when the series terminates")
    n_terms = min(stops)
    total = 1.0
    term = 1.0
    for p in range(n_terms):
        den = (b1 + p) * (b2 + p) * (p + 1.0)
        if den == 0.0:
            raise SeriesError("3F2 denominator parameter hits a pole before termination")
        term *= (a1 + p) * (a2 + p) * (a3 + p) / den * z
        total += term
    return total


def hyp3f2_unit(a1: float, a2: float, a3: float, b1: float, b2: float) -> float:
    """Terminating 3F2(a1, a2, a3; b1, b2; 1).

    One of the numerator parameters must be a non-positive integer.
    """
    return hyp3f2_terminating(a1, a2, a3, b1, b2, 1.0)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f, a: float, b: float) -> float:
        half = 0.5 * (b - a)
        x = a + half * (self.nodes + 1.0)
        return float(half * np.dot(self.weights, f(x)))


@lru_cache(maxsize=64)
def _gauss_legendre_cached(npts: int):
    k = np.arange(1, npts + 1)
    # Tricomi initial guess for the roots of P_npts, in descending order
    x = np.cos(np.pi * (k - 0.25) / (npts + 0.5)) * (1.0 - (npts - 1.0) / (8.0 * npts**3))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, npts + 1):
            p0, p1 = p1, ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j
        dp = npts * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, npts + 1):
        p0, p1 = p1, ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j
    dp = npts * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x = x[::-1].copy()
    w = w[::-1].copy()
    # enforce exact symmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(npts: int) -> QuadratureRule:
    """Gauss-Legendre rule with ``npts`` nodes (2 <= npts <= 512) by Newton iteration."""
    if int(npts) != npts or not 2 <= npts <= 512:
        raise ValueError(f"npts must be an integer in [2, 512], got {npts}")
    x, w = _gauss_legendre_cached(int(npts))
    return QuadratureRule(x, w)
