"""Finite-difference eigensolver used as an independent check on the closed forms.

The radial operator ``-u'' + u_eff(r) u`` is discretized with the three-point
stencil on a uniform grid with Dirichlet ends, giving a symmetric tridiagonal
matrix whose eigenvalues are located by Sturm-sequence bisection. Because the
effective potential depends on the energy, bound states are the energies where
the n-th eigenvalue meets the energy-dependent target; that outer problem is
solved by bisection as well.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numba
import numpy as np

from .model import PhysicalContext, PotentialParams, QuantumNumbers, Symmetry, rosen_morse
from .pekeris import PekerisCoeffs, centrifugal_approx, matched_coeffs


class Centrifugal(enum.Enum):
    EXACT = "exact"
    PEKERIS = "pekeris"


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [r_min, r_max]; ``points`` interior unknowns, Dirichlet at both ends."""

    r_min: float
    r_max: float
    points: int

    def __post_init__(self):
        if not 0 <= self.r_min < self.r_max:
            raise ValueError(f"need 0 <= r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.points < 200:
            raise ValueError("points must be at least 200")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.points + 1)

    def nodes(self) -> np.ndarray:
        return self.r_min + self.h * np.arange(1, self.points + 1)

    def refined(self, factor: int = 2) -> "GridSpec":
        return GridSpec(self.r_min, self.r_max, self.points * factor)


@dataclass(frozen=True)
class OracleResult:
    energy: float
    eigen_index: int
    grid: GridSpec | None
    converged: bool
    richardson_error: float
    coarse_energy: float = math.nan
    fine_energy: float = math.nan


@dataclass(frozen=True)
class EffectiveProblem:
    u_eff: object
    target: float


def effective_problem(energy: float, params: PotentialParams, context: PhysicalContext,
                      qn: QuantumNumbers, centrifugal: Centrifugal = Centrifugal.EXACT,
                      coeffs: PekerisCoeffs | None = None) -> EffectiveProblem:
    """Effective potential and spectral target of the second-order radial equation at ``energy``.

    Spin: u_eff = omega C(r) + (Mc^2 + E - C_s) Sigma(r) / hbarc^2,
          target = (E^2 - M^2c^4 + C_s (Mc^2 - E)) / hbarc^2.
    Pseudospin: u_eff = omega~ C(r) - (Mc^2 - E + C_ps) Delta(r) / hbarc^2,
          target = (E^2 - M^2c^4 - C_ps (Mc^2 + E)) / hbarc^2.
    """
    hc2 = context.hbarc**2
    mc2, cs = context.mc2, context.sym_const
    if context.symmetry is Symmetry.SPIN:
        w = qn.omega
        strength = (mc2 + energy - cs) / hc2
        target = (energy * energy - mc2 * mc2 + cs * (mc2 - energy)) / hc2
    else:
        w = qn.omega_tilde
        strength = -(mc2 - energy + cs) / hc2
        target = (energy * energy - mc2 * mc2 - cs * (mc2 + energy)) / hc2
    if centrifugal is Centrifugal.PEKERIS:
        coeffs = coeffs or matched_coeffs(params.alpha, params.r_e)

    def u_eff(r):
        r = np.asarray(r, dtype=float)
        out = strength * rosen_morse(r, params)
        if w != 0:
            if centrifugal is Centrifugal.EXACT:
                out = out + w / r**2
            else:
                out = out + w * centrifugal_approx(r, params.alpha, params.r_e, coeffs)
        return out

    return EffectiveProblem(u_eff, target)


@numba.njit(cache=True)
def _sturm_count(diag, off2, x):
    """Number of eigenvalues strictly below x of the tridiagonal (diag, off) with off2 = off^2."""
    count = 0
    q = diag[0] - x
    if q < 0:
        count += 1
    for i in range(1, diag.size):
        if q == 0.0:
            q = 1e-300
        q = diag[i] - x - off2[i - 1] / q
        if q < 0:
            count += 1
    return count


@numba.njit(cache=True)
def _kth_eigenvalue(diag, off2, k, lo, hi, rtol):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * max(abs(lo), abs(hi), 1e-300):
            break
        if _sturm_count(diag, off2, mid) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _assemble(u_eff, grid: GridSpec):
    h = grid.h
    diag = 2.0 / h**2 + np.asarray(u_eff(grid.nodes()), dtype=float)
    off2 = np.full(grid.points - 1, 1.0 / h**4)
    return diag, off2


def eigenvalues_fd(u_eff, grid: GridSpec, count: int) -> np.ndarray:
    """Lowest ``count`` eigenvalues of -u'' + u_eff u with u = 0 at both grid ends."""
    if count < 1 or count > grid.points:
        raise ValueError(f"count must be in [1, {grid.points}], got {count}")
    diag, off2 = _assemble(u_eff, grid)
    off = math.sqrt(off2[0]) if off2.size else 0.0
    lo = float(np.min(diag)) - 2.0 * off
    hi = float(np.max(diag)) + 2.0 * off
    return np.array([_kth_eigenvalue(diag, off2, k, lo, hi, 1e-15) for k in range(count)])


def _energy_window(params, context):
    mc2, c = context.mc2, context.sym_const
    v2 = float(np.real(params.v2))
    pad = 1e-9 * mc2
    if context.symmetry is Symmetry.SPIN:
        return -mc2 + c + pad, mc2 + v2 - pad
    return -mc2 + v2 + pad, mc2 + c - pad


def _decay_eps(energy, params, context):
    """Asymptotic decay exponent (in units of 2 alpha) of the effective problem at ``energy``."""
    hc2 = context.hbarc**2
    mc2, c = context.mc2, context.sym_const
    v2 = float(np.real(params.v2))
    if context.symmetry is Symmetry.SPIN:
        k2 = (mc2 + energy - c) * (mc2 - energy + v2) / hc2
    else:
        k2 = (mc2 - energy + c) * (mc2 + energy - v2) / hc2
    return math.sqrt(k2) / (2.0 * params.alpha) if k2 > 0 else 0.0


def default_grid(params: PotentialParams, eps_est: float, points: int = 4000,
                 regular_origin: bool = False) -> GridSpec:
    """r_max = 30/alpha + 10/(alpha eps_est), capped at 2000/alpha.

    r_min = 1e-4/alpha, or 0 when the effective potential is finite at the
    origin; a wall at r_min > 0 would then shift s-like levels by about
    |u'(0)|^2 r_min, which grid refinement cannot remove.
    """
    a = params.alpha
    r_max = 30.0 / a + (10.0 / (a * eps_est) if eps_est > 0 else math.inf)
    return GridSpec(0.0 if regular_origin else 1e-4 / a, min(r_max, 2000.0 / a), points)


def _regular_origin(w, centrifugal) -> bool:
    return w == 0 or centrifugal is Centrifugal.PEKERIS


class _Phi:
    """Sign of lambda_n(E) - target(E) via one Sturm count, for a fixed grid."""

    def __init__(self, n, params, context, qn, centrifugal, coeffs, grid):
        self.n = n
        self.grid = grid
        self.args = (params, context, qn, centrifugal, coeffs)
        self.off2 = np.full(grid.points - 1, 1.0 / grid.h**4)
        self.r = grid.nodes()
        # precompute the E-independent parts
        params, context, qn, centrifugal, coeffs = self.args
        self.sigma = np.asarray(rosen_morse(self.r, params), dtype=float)
        w = qn.centrifugal_strength(context.symmetry)
        if w == 0:
            self.cent = np.zeros_like(self.r)
        elif centrifugal is Centrifugal.EXACT:
            self.cent = w / self.r**2
        else:
            c = coeffs or matched_coeffs(params.alpha, params.r_e)
            self.cent = w * np.asarray(centrifugal_approx(self.r, params.alpha, params.r_e, c))
        self.base = 2.0 / grid.h**2 + self.cent

    def strength_target(self, energy):
        params, context, *_ = self.args
        hc2 = context.hbarc**2
        mc2, cs = context.mc2, context.sym_const
        if context.symmetry is Symmetry.SPIN:
            return (mc2 + energy - cs) / hc2, (energy * energy - mc2 * mc2 + cs * (mc2 - energy)) / hc2
        return -(mc2 - energy + cs) / hc2, (energy * energy - mc2 * mc2 - cs * (mc2 + energy)) / hc2

    def sign(self, energy) -> int:
        s, t = self.strength_target(energy)
        below = _sturm_count(self.base + s * self.sigma, self.off2, t)
        # lambda_n >= target  <=>  at most n eigenvalues lie below the target
        return 1 if below <= self.n else -1

    def value(self, energy) -> float:
        s, t = self.strength_target(energy)
        diag = self.base + s * self.sigma
        off = 1.0 / self.grid.h**2
        lam = _kth_eigenvalue(diag, self.off2, self.n, float(np.min(diag)) - 2 * off,
                              float(np.max(diag)) + 2 * off, 1e-15)
        return lam - t


def _bisect_sign(phi: _Phi, lo, hi, slo, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if phi.sign(mid) == slo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _brackets(phi: _Phi, lo, hi, scan_points):
    es = np.linspace(lo, hi, scan_points)
    signs = [phi.sign(e) for e in es]
    return [(es[i], es[i + 1], signs[i]) for i in range(scan_points - 1) if signs[i] != signs[i + 1]]


def _refine_on(grid, n, args, lo, hi, tol):
    """Root of phi on ``grid`` inside [lo, hi]; widens the bracket if the sign change moved."""
    phi = _Phi(n, *args, grid)
    width = hi - lo
    for _ in range(30):
        slo, shi = phi.sign(lo), phi.sign(hi)
        if slo != shi:
            return _bisect_sign(phi, lo, hi, slo, tol)
        lo, hi = lo - width, hi + width
        width *= 2.0
    return math.nan


def self_consistent_energies(n: int, params: PotentialParams, context: PhysicalContext,
                             qn: QuantumNumbers, centrifugal: Centrifugal = Centrifugal.EXACT,
                             tol: float | None = None, window: tuple[float, float] | None = None,
                             points: int = 4000, scan_points: int = 400,
                             coeffs: PekerisCoeffs | None = None) -> list[OracleResult]:
    """Every E in the window where the n-th eigenvalue equals the target, Richardson-extrapolated.

    Each root is bracketed on a 4000-point grid adapted to its decay rate,
    re-solved on the doubled grid, and extrapolated as
    E = E_2N + (E_2N - E_N)/3 with error estimate |E_2N - E_N|/3.
    """
    if qn.n != n:
        qn = QuantumNumbers(n, qn.kappa)
    tol = 1e-6 * context.mc2 if tol is None else tol
    lo, hi = window or _energy_window(params, context)
    if not lo < hi:
        return []
    args = (params, context, qn, centrifugal, coeffs)
    mid_eps = _decay_eps(0.5 * (lo + hi), params, context)
    regular = _regular_origin(qn.centrifugal_strength(context.symmetry), centrifugal)
    scan_grid = default_grid(params, max(mid_eps, 0.05), points, regular)
    phi = _Phi(n, *args, scan_grid)
    btol = 1e-13 * context.mc2
    results = []
    for a, b, _ in _brackets(phi, lo, hi, scan_points):
        e0 = _bisect_sign(phi, a, b, phi.sign(a), btol)
        eps = _decay_eps(e0, params, context)
        grid = default_grid(params, eps, points, regular) if eps > 0 else scan_grid
        span = max(b - a, 1e-6 * context.mc2)
        e_n = _refine_on(grid, n, args, e0 - span, e0 + span, btol)
        e_2n = _refine_on(grid.refined(2), n, args, e_n - span, e_n + span, btol)
        if not (math.isfinite(e_n) and math.isfinite(e_2n)):
            continue
        err = abs(e_2n - e_n) / 3.0
        results.append(OracleResult(e_2n + (e_2n - e_n) / 3.0, n, grid, err < tol, err, e_n, e_2n))
    return results


def self_consistent_energy(n: int, params: PotentialParams, context: PhysicalContext,
                           qn: QuantumNumbers, centrifugal: Centrifugal = Centrifugal.EXACT,
                           tol: float | None = None, window: tuple[float, float] | None = None,
                           near: float | None = None, **kwargs) -> OracleResult:
    """Single oracle state: the one nearest ``near`` if given, else the highest in the window.

    Returns an unconverged result with nan energy when phi has no sign change.
    """
    found = self_consistent_energies(n, params, context, qn, centrifugal, tol, window, **kwargs)
    if not found:
        return OracleResult(math.nan, n, None, False, math.nan)
    if near is None:
        return found[-1]
    return min(found, key=lambda res: abs(res.energy - near))


def nonrel_energy(n: int, l: int, params: PotentialParams, mu: float,
                  centrifugal: Centrifugal = Centrifugal.EXACT, points: int = 4000,
                  coeffs: PekerisCoeffs | None = None, r_max: float | None = None) -> OracleResult:
    """Schrodinger eigenvalue of -u'' + [l(l+1) C(r) + 2 mu Sigma(r)] u = 2 mu E u, Richardson over N, 2N."""
    w = l * (l + 1)
    if centrifugal is Centrifugal.PEKERIS:
        coeffs = coeffs or matched_coeffs(params.alpha, params.r_e)

    def u_eff(r):
        out = 2.0 * mu * rosen_morse(r, params)
        if w:
            out = out + (w / r**2 if centrifugal is Centrifugal.EXACT
                         else w * centrifugal_approx(r, params.alpha, params.r_e, coeffs))
        return out

    # first pass on a generous grid to estimate the decay rate
    regular = _regular_origin(w, centrifugal)
    grid = GridSpec(0.0 if regular else 1e-4 / params.alpha, r_max or 200.0 / params.alpha, points)
    e0 = eigenvalues_fd(u_eff, grid, n + 1)[n] / (2.0 * mu)
    k2 = 2.0 * mu * (float(np.real(params.v2)) - e0)
    if r_max is None and k2 > 0:
        grid = default_grid(params, math.sqrt(k2) / (2.0 * params.alpha), points, regular)
    e_n = eigenvalues_fd(u_eff, grid, n + 1)[n] / (2.0 * mu)
    e_2n = eigenvalues_fd(u_eff, grid.refined(2), n + 1)[n] / (2.0 * mu)
    err = abs(e_2n - e_n) / 3.0
    return OracleResult(e_2n + (e_2n - e_n) / 3.0, n, grid, True, err, e_n, e_2n)
