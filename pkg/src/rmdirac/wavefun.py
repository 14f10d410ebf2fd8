"""Spinor components, their normalization and ODE residual checks.

The canonical radial function of both branches is

    x^eps (1 + x)^(delta + 1) 2F1(-n, n + 2(eps + delta + 1); 2 eps + 1; -x),

with ``x = exp(-2 alpha r)``; on the spin branch it is the upper component F
(with epsilon, delta), on the pseudospin branch the lower component G (with
epsilon-tilde, delta_1). The partner component follows from the first-order
Dirac relations.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import spectra
from .model import BoundState, PhysicalContext, PotentialParams, Symmetry, rosen_morse
from .pekeris import PekerisCoeffs, centrifugal_approx, matched_coeffs
from .specfun import gauss_legendre, hyp2f1, hyp3f2_terminating, jacobi_p, pochhammer

SERIES_RTOL = 1e-14
TAIL_RTOL = 1e-16


class NormalizationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpinorSolution:
    """A bound state together with everything needed to evaluate its spinor.

    ``params`` and ``context`` describe the well actually solved: for Eckart
    branches the depths are already flipped and for the exact-spin branch
    C_s is zero (see ``from_spec``).
    """

    state: BoundState
    branch: spectra.Branch
    params: PotentialParams
    context: PhysicalContext
    coeffs: PekerisCoeffs

    def __post_init__(self):
        if self.branch.value != self.state.branch:
            raise ValueError(f"branch {self.branch.value} does not match state branch {self.state.branch}")
        if self.branch.symmetry is not self.context.symmetry:
            raise ValueError("context symmetry does not match the branch")

    @property
    def symmetry(self) -> Symmetry:
        return self.branch.symmetry

    @classmethod
    def from_spec(cls, spec: spectra.EnergyResidualSpec, state: BoundState) -> "SpinorSolution":
        return cls(state, spec.branch, spec.physical_params(), spec.physical_context(), spec.coeffs)


def _x(r, alpha):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radial coordinate must be positive")
    return r, np.exp(-2.0 * alpha * r)


def canonical_raw(r, alpha: float, n: int, eps: float, delta: float):
    """Unnormalized canonical function at r."""
    _, x = _x(r, alpha)
    b = n + 2.0 * (eps + delta + 1.0)
    out = x**eps * (1.0 + x) ** (delta + 1.0) * hyp2f1(-n, b, 2.0 * eps + 1.0, -x)
    return out


def canonical_raw_jacobi(r, alpha: float, n: int, eps: float, delta: float):
    """Same function through P_n^{(2 eps, 2 delta + 1)}(1 + 2x) rather than 2F1."""
    _, x = _x(r, alpha)
    scale = math.factorial(n) / pochhammer(2.0 * eps + 1.0, n)
    return x**eps * (1.0 + x) ** (delta + 1.0) * scale * jacobi_p(n, 2.0 * eps, 2.0 * delta + 1.0, 1.0 + 2.0 * x)


def canonical_raw_derivative(r, alpha: float, n: int, eps: float, delta: float):
    """d/dr of ``canonical_raw`` using d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z)."""
    _, x = _x(r, alpha)
    b = n + 2.0 * (eps + delta + 1.0)
    c = 2.0 * eps + 1.0
    pref = x**eps * (1.0 + x) ** (delta + 1.0)
    h = hyp2f1(-n, b, c, -x)
    out = pref * (-2.0 * alpha * eps - 2.0 * alpha * (delta + 1.0) * x / (1.0 + x)) * h
    if n > 0:
        out = out - pref * 2.0 * alpha * n * b / c * x * hyp2f1(-n + 1, b + 1.0, c + 1.0, -x)
    return out


def _shape(s: SpinorSolution):
    return s.params.alpha, s.state.qn.n, s.state.epsilon, s.state.delta


def _scalar(out):
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out


def _norm(s: SpinorSolution) -> float:
    return s.state.norm if s.state.norm is not None else normalization_quadrature(s)


def upper_spinor_f(r, s: SpinorSolution):
    """Normalized upper component F on the spin branch."""
    if s.symmetry is not Symmetry.SPIN:
        raise ValueError("upper_spinor_f is the spin-branch component; use pseudospin_pair")
    return _scalar(_norm(s) * canonical_raw(r, *_shape(s)))


def _spin_denominator(s: SpinorSolution) -> float:
    den = s.context.mc2 + s.state.energy - s.context.sym_const
    if den == 0.0:
        raise ValueError("E = -Mc^2 + C_s: the lower component is undefined")
    return den


def lower_spinor_g_from_f(r, s: SpinorSolution):
    """G = (dF/dr + kappa F / r) / (Mc^2 + E - C_s), with dF/dr in closed form."""
    if s.symmetry is not Symmetry.SPIN:
        raise ValueError("lower_spinor_g_from_f applies to the spin branch")
    den = _spin_denominator(s)
    r = np.asarray(r, dtype=float)
    nrm = _norm(s)
    f = canonical_raw(r, *_shape(s))
    df = canonical_raw_derivative(r, *_shape(s))
    return _scalar(nrm * s.context.hbarc * (df + s.state.qn.kappa * f / r) / den)


def pseudospin_pair(r, s: SpinorSolution) -> dict:
    """Lower component G (canonical form) and upper F = (dG/dr - kappa G / r) / (Mc^2 - E + C_ps)."""
    if s.symmetry is not Symmetry.PSEUDOSPIN:
        raise ValueError("pseudospin_pair applies to the pseudospin branch")
    den = s.context.mc2 - s.state.energy + s.context.sym_const
    if den == 0.0:
        raise ValueError("E = Mc^2 + C_ps: the upper component is undefined")
    r = np.asarray(r, dtype=float)
    nrm = _norm(s)
    g = canonical_raw(r, *_shape(s))
    dg = canonical_raw_derivative(r, *_shape(s))
    return {
        "g": _scalar(nrm * g),
        "f": _scalar(nrm * s.context.hbarc * (dg - s.state.qn.kappa * g / r) / den),
    }


def primary_component(r, s: SpinorSolution):
    """F on the spin branch, G on the pseudospin branch (the component obeying a second-order ODE)."""
    return _scalar(_norm(s) * canonical_raw(r, *_shape(s)))


def partner_component(r, s: SpinorSolution):
    if s.symmetry is Symmetry.SPIN:
        return lower_spinor_g_from_f(r, s)
    return pseudospin_pair(r, s)["f"]


def canonical_integral_series(n: int, eps: float, delta: float, alpha: float) -> float:
    """Closed-form value of the integral of the squared canonical function over r in (0, inf).

    With t = x / (1 + x) and the Pfaff transformation the integral becomes

        (1/2 alpha) sum_m (s)_m / m! sum_p k_p 2^-nu / nu
                    3F2(nu, -n, -n - 2 delta - 1; nu + 1, 2 eps + 1; 1/2),

    nu = 2 eps + m + p, s = 2 eps + 2 delta + 3 + 2n and k_p the coefficients of
    2F1(-n, -n - 2 delta - 1; 2 eps + 1; t). Every m-term is non-negative, and
    the m-sum converges geometrically with ratio about 1/2.
    """
    c = 2.0 * eps + 1.0
    cb = -n - 2.0 * delta - 1.0
    s_exp = 2.0 * eps + 2.0 * delta + 3.0 + 2.0 * n
    k = [pochhammer(-n, p) * pochhammer(cb, p) / (pochhammer(c, p) * math.factorial(p)) for p in range(n + 1)]
    total = 0.0
    coef = 1.0  # (s)_m / m!
    m = 0
    while True:
        inner = 0.0
        for p, kp in enumerate(k):
            nu_ = 2.0 * eps + m + p
            inner += kp * 2.0 ** (-nu_) / nu_ * hyp3f2_terminating(nu_, -n, cb, nu_ + 1.0, c, 0.5)
        term = coef * inner
        total += term
        if m > s_exp and abs(term) <= SERIES_RTOL * abs(total):
            break
        m += 1
        if m > 100_000:
            raise NormalizationError("normalization series did not converge")
        coef *= (s_exp + m - 1.0) / m
    return total / (2.0 * alpha)


def normalization_closed_form(s: SpinorSolution) -> float:
    """Normalization constant from the hypergeometric series for the canonical function."""
    alpha, n, eps, delta = _shape(s)
    val = canonical_integral_series(n, eps, delta, alpha)
    if not val > 0:
        raise NormalizationError(
            f"non-positive normalization integral {val} (n={n}, eps={eps}, delta={delta})"
        )
    return 1.0 / math.sqrt(val)


def normalization_printed_series(s: SpinorSolution) -> float:
    """Literal evaluation of the published Gamma/3F2 normalization series.

    Gamma(n + m)/Gamma(n) is read as the Pochhammer symbol (n)_m so that n = 0
    is finite. The published series targets the (1 - z) Jacobi form rather
    than the canonical function, so this value is diagnostic only. Returns
    nan when the bracket is not positive.
    """
    alpha, n, eps, delta = _shape(s)
    b = n + 2.0 * (1.0 + eps + delta)
    lead = math.lgamma(2.0 * delta + 3.0) + math.lgamma(2.0 * eps + 1.0)
    total = 0.0
    for m in range(0, 400):
        pn = pochhammer(n, m)
        if pn == 0.0:
            break
        logmag = (
            math.log(abs(pochhammer(b, m) * pn))
            - math.lgamma(m + 1.0)
            - math.lgamma(m + 2.0 * eps + 1.0)
            - math.lgamma(m + 2.0 * (eps + delta + 1.5))
            + lead
        )
        f3 = hyp3f2_terminating(2.0 * eps + m, -n, b, m + 2.0 * (eps + delta + 1.5), 1.0 + 2.0 * eps, 1.0)
        term = (-1.0) ** m * math.exp(logmag) * f3
        total += term
        if m > 2 and abs(term) <= SERIES_RTOL * abs(total):
            break
    bracket = total / (2.0 * alpha)
    return 1.0 / math.sqrt(bracket) if bracket > 0 else math.nan


def tail_cutoff(s: SpinorSolution, rtol: float = TAIL_RTOL) -> float:
    """Radius beyond which the squared canonical function stays below ``rtol`` of its peak."""
    alpha, n, eps, delta = _shape(s)
    return _tail_cutoff(alpha, n, eps, delta, rtol)


def _tail_cutoff(alpha, n, eps, delta, rtol):
    # the square decays like exp(-4 alpha eps r) times a bounded factor
    r_hi = (math.log(1.0 / rtol) + 10.0 * (n + 1)) / (4.0 * alpha * eps) + 20.0 / alpha
    r = np.linspace(r_hi / 20000.0, r_hi, 20001)
    g = canonical_raw(r, alpha, n, eps, delta) ** 2
    peak = float(np.max(g))
    big = np.nonzero(g >= rtol * peak)[0]
    return float(r[min(big[-1] + 1, r.size - 1)])


def _adaptive_gl(f, a, b, rtol=1e-15, depth=0, lo_rule=32, hi_rule=64):
    lo = gauss_legendre(lo_rule).integrate(f, a, b)
    hi = gauss_legendre(hi_rule).integrate(f, a, b)
    if abs(hi - lo) <= rtol * max(abs(hi), 1e-300) or abs(hi - lo) < 1e-300:
        return hi
    if depth > 40:
        raise NormalizationError("adaptive quadrature refinement did not converge")
    mid = 0.5 * (a + b)
    return _adaptive_gl(f, a, mid, rtol, depth + 1) + _adaptive_gl(f, mid, b, rtol, depth + 1)


def integral_of_square(f, r_cut: float, alpha: float, panels: int = 16) -> float:
    """Integral of f(r)^2 on (0, r_cut) by panel-adaptive Gauss-Legendre."""
    edges = np.linspace(0.0, r_cut, panels + 1)
    return float(sum(_adaptive_gl(lambda r: f(r) ** 2, a, b) for a, b in zip(edges[:-1], edges[1:])))


@lru_cache(maxsize=256)
def _norm_quad(alpha, n, eps, delta, rtol):
    r_cut = _tail_cutoff(alpha, n, eps, delta, rtol)
    val = integral_of_square(lambda r: canonical_raw(r, alpha, n, eps, delta), r_cut, alpha)
    if not val > 0:
        raise NormalizationError(f"non-positive norm integral {val}")
    return 1.0 / math.sqrt(val)


def normalization_quadrature(s: SpinorSolution, rtol: float = TAIL_RTOL) -> float:
    """N such that the integral of (N * canonical)^2 over (0, inf) is one."""
    alpha, n, eps, delta = _shape(s)
    return _norm_quad(alpha, n, eps, delta, rtol)


def with_norm(s: SpinorSolution, norm: float | None = None) -> SpinorSolution:
    """Copy of ``s`` whose state carries ``norm`` (quadrature value by default)."""
    norm = normalization_quadrature(s) if norm is None else norm
    return dataclasses.replace(s, state=dataclasses.replace(s.state, norm=norm))


def second_derivative(f, r, h):
    """Fourth-order central difference for f''."""
    return (-f(r + 2 * h) + 16 * f(r + h) - 30 * f(r) + 16 * f(r - h) - f(r - 2 * h)) / (12 * h * h)


def first_derivative(f, r, h):
    return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h)


ODE_STEP = 1e-3


def ode_residual(s: SpinorSolution, r_grid, func=None, step: float = ODE_STEP):
    """Scaled residual of the second-order radial equation on ``r_grid``.

    Spin branch:
        [-F'' + (omega C(r) + (Mc^2 + E - C_s) Sigma(r) / hbarc^2) F - calE F] / max|F|,
        calE = (E^2 - M^2c^4 + C_s (Mc^2 - E)) / hbarc^2.
    Pseudospin branch (for G):
        [-G'' + (omega~ C(r) - (Mc^2 - E + C_ps) Delta(r) / hbarc^2) G - calE~ G] / max|G|,
        calE~ = (E^2 - M^2c^4 - C_ps (Mc^2 + E)) / hbarc^2.
    C(r) is the Pekeris approximant and the sampled component defaults to the
    canonical one; ``func`` overrides it. Derivatives use fourth-order central
    differences with step ``step / alpha``.
    """
    r = np.asarray(r_grid, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r_grid must lie strictly inside (0, inf)")
    p, c, st = s.params, s.context, s.state
    h = step / p.alpha
    if func is None:
        func = lambda rr: primary_component(rr, s)  # noqa: E731
    vals = np.asarray(func(r), dtype=float)
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if scale == 0.0:
        return np.zeros_like(r)
    d2 = second_derivative(func, r, h)
    hc2 = c.hbarc**2
    e = st.energy
    pot = rosen_morse(r, p)
    cent = centrifugal_approx(r, p.alpha, p.r_e, s.coeffs)
    if s.symmetry is Symmetry.SPIN:
        u = st.qn.omega * cent + (c.mc2 + e - c.sym_const) * pot / hc2
        target = (e * e - c.mc2**2 + c.sym_const * (c.mc2 - e)) / hc2
    else:
        u = st.qn.omega_tilde * cent - (c.mc2 - e + c.sym_const) * pot / hc2
        target = (e * e - c.mc2**2 - c.sym_const * (c.mc2 + e)) / hc2
    return (-d2 + (u - target) * vals) / scale


def count_nodes(values) -> int:
    """Sign changes of a sampled function, ignoring samples at negligible amplitude."""
    v = np.asarray(values, dtype=float)
    keep = np.abs(v) > 1e-10 * np.max(np.abs(v))
    signs = np.sign(v[keep])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def nonrel_state(n: int, l: int, params: PotentialParams, mu: float, coeffs: PekerisCoeffs | None = None):
    """(energy, eps, delta0) of the Schrodinger-limit state."""
    coeffs = coeffs or matched_coeffs(params.alpha, params.r_e)
    e = spectra.nonrelativistic_energy(n, l, params, mu, coeffs)
    w = l * (l + 1)
    arg = w * coeffs.d0 / params.r_e**2 + 2.0 * mu * (params.v2 - e)
    if not arg > 0:
        raise ValueError(f"no decaying solution: epsilon^2 argument {arg} <= 0")
    eps = math.sqrt(arg) / (2.0 * params.alpha)
    delta0 = spectra.nonrelativistic_delta0(l, params, mu, coeffs)
    return e, eps, delta0


def nonrel_wavefunction(r, n: int, l: int, params: PotentialParams, mu: float,
                        coeffs: PekerisCoeffs | None = None):
    """Normalized Schrodinger-limit radial function (canonical form with delta_0)."""
    _, eps, delta0 = nonrel_state(n, l, params, mu, coeffs)
    if not delta0 > 0:
        raise ValueError(f"delta_0 = {delta0} must be positive")
    nrm = _norm_quad(params.alpha, n, eps, delta0, TAIL_RTOL)
    return _scalar(nrm * canonical_raw(r, params.alpha, n, eps, delta0))
