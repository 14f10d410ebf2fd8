"""Energy equations, bound-state search and the special-case parameter maps.

Every residual is ``LHS - RHS`` of a closed-form quantization condition and is
implemented from its own printed structure, so the consistency relations
between them (s-wave, Eckart, spin <-> pseudospin) are genuine cross-checks.

The first-order Pekeris coefficient D1 enters with the sign fixed by
``u = z / (1 - z)``, ``z = -exp(-2 alpha r)``; see ``nu._effective_d1``.
"""

from __future__ import annotations

import cmath
import dataclasses
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import nu
from .model import BoundState, PhysicalContext, PotentialParams, QuantumNumbers, Symmetry
from .pekeris import PekerisCoeffs, matched_coeffs


class DomainError(ValueError):
    """The square-root argument defining delta is negative at this energy."""


class Branch(enum.Enum):
    SPIN_GENERAL = "spin"
    SPIN_EXACT = "spin-exact"
    PSEUDOSPIN = "pseudospin"
    SWAVE_SPIN = "swave-spin"
    SWAVE_PSEUDO = "swave-pseudospin"
    ECKART_SPIN = "eckart-spin"
    ECKART_PSEUDO = "eckart-pseudospin"

    @property
    def symmetry(self) -> Symmetry:
        if self in (Branch.PSEUDOSPIN, Branch.SWAVE_PSEUDO, Branch.ECKART_PSEUDO):
            return Symmetry.PSEUDOSPIN
        return Symmetry.SPIN

    @property
    def eckart(self) -> bool:
        return self in (Branch.ECKART_SPIN, Branch.ECKART_PSEUDO)


class CaseMap(enum.Enum):
    SPIN_TO_PSEUDOSPIN = "spin-to-pseudospin"
    ECKART = "eckart"
    PT_SYMMETRIC = "pt"


_SWAVE_KAPPA = {
    Branch.SWAVE_SPIN: -1,
    Branch.ECKART_SPIN: -1,
    Branch.SWAVE_PSEUDO: 1,
    Branch.ECKART_PSEUDO: 1,
}

_MIRROR = {
    Branch.SPIN_GENERAL: Branch.PSEUDOSPIN,
    Branch.PSEUDOSPIN: Branch.SPIN_GENERAL,
    Branch.SWAVE_SPIN: Branch.SWAVE_PSEUDO,
    Branch.SWAVE_PSEUDO: Branch.SWAVE_SPIN,
    Branch.ECKART_SPIN: Branch.ECKART_PSEUDO,
    Branch.ECKART_PSEUDO: Branch.ECKART_SPIN,
}


@dataclass(frozen=True)
class EnergyResidualSpec:
    branch: Branch
    params: PotentialParams
    context: PhysicalContext
    qn: QuantumNumbers
    coeffs: PekerisCoeffs | None = None
    # bookkeeping for the spin <-> pseudospin map: True when upper and lower
    # components have traded roles relative to the spec this one came from
    swapped: bool = False
    pt: bool = False

    def __post_init__(self):
        if self.branch.symmetry is not self.context.symmetry:
            raise ValueError(
                f"branch {self.branch.value} needs a {self.branch.symmetry.value} context"
            )
        want = _SWAVE_KAPPA.get(self.branch)
        if want is not None and self.qn.kappa != want:
            raise ValueError(f"branch {self.branch.value} requires kappa = {want}")
        if self.coeffs is None:
            object.__setattr__(self, "coeffs", matched_coeffs(self.params.alpha, self.params.r_e))

    def physical_params(self) -> PotentialParams:
        """Rosen-Morse parameters of the well actually solved (Eckart branches flip both depths)."""
        if self.branch.eckart:
            return dataclasses.replace(self.params, v1=-self.params.v1, v2=-self.params.v2)
        return self.params

    def physical_context(self) -> PhysicalContext:
        if self.branch is Branch.SPIN_EXACT:
            return dataclasses.replace(self.context, sym_const=0.0)
        return self.context


@dataclass(frozen=True)
class SearchWindow:
    e_min: float
    e_max: float
    grid_points: int = 2000

    def __post_init__(self):
        if not self.e_min < self.e_max:
            raise ValueError(f"empty window [{self.e_min}, {self.e_max}]")
        if self.grid_points < 100:
            raise ValueError("grid_points must be at least 100")


def _delta(rad):
    if isinstance(rad, complex):
        return 0.5 * (-1.0 + cmath.sqrt(rad))
    if rad < 0:
        raise DomainError(f"negative radicand {rad} in delta")
    return 0.5 * (-1.0 + math.sqrt(rad))


def _common(spec: EnergyResidualSpec):
    p, c = spec.params, spec.context
    return p, c, p.alpha**2, c.hbarc**2, spec.coeffs


def spin_delta(energy, spec: EnergyResidualSpec, sym_const=None):
    p, c, a2, hc2, co = _common(spec)
    cs = c.sym_const if sym_const is None else sym_const
    w = spec.qn.omega
    return _delta(1.0 + w * co.d2 / (a2 * p.r_e**2) + 4.0 * p.v1 * (c.mc2 + energy - cs) / (a2 * hc2))


def _spin_general(energy, spec: EnergyResidualSpec, sym_const):
    p, c, a2, hc2, co = _common(spec)
    w = spec.qn.omega
    big_n = spec.qn.n + spin_delta(energy, spec, sym_const) + 1.0
    a = c.mc2 + energy - sym_const
    q = -p.v2 * a / (2.0 * a2 * hc2) + w * (nu._effective_d1(co) + co.d2) / (4.0 * a2 * p.r_e**2)
    lhs = a * (c.mc2 - energy + p.v2) + w * co.d0 * hc2 / p.r_e**2
    return lhs - a2 * hc2 * (q / big_n - big_n) ** 2


def spin_residual(energy, spec: EnergyResidualSpec):
    """Spin-symmetry energy equation for arbitrary kappa (C_s from the context)."""
    return _spin_general(energy, spec, spec.context.sym_const)


def spin_exact_residual(energy, spec: EnergyResidualSpec):
    """Exact spin symmetry: the general equation with C_s = 0 in every occurrence."""
    return _spin_general(energy, spec, 0.0)


def pseudospin_delta(energy, spec: EnergyResidualSpec):
    p, c, a2, hc2, co = _common(spec)
    w = spec.qn.omega_tilde
    return _delta(
        1.0 + w * co.d2 / (a2 * p.r_e**2) - 4.0 * p.v1 * (c.mc2 - energy + c.sym_const) / (a2 * hc2)
    )


def pseudospin_residual(energy, spec: EnergyResidualSpec):
    """Pseudospin-symmetry energy equation (C_ps from the context)."""
    p, c, a2, hc2, co = _common(spec)
    w = spec.qn.omega_tilde
    big_n = spec.qn.n + pseudospin_delta(energy, spec) + 1.0
    b = c.mc2 - energy + c.sym_const
    q = p.v2 * b / (2.0 * a2 * hc2) + w * (nu._effective_d1(co) + co.d2) / (4.0 * a2 * p.r_e**2)
    lhs = b * (c.mc2 + energy - p.v2) + w * co.d0 * hc2 / p.r_e**2
    return lhs - a2 * hc2 * (q / big_n - big_n) ** 2


def swave_spin_residual(energy, spec: EnergyResidualSpec):
    """kappa = -1 spin equation, delta_2 form (C_s from the context)."""
    p, c, a2, hc2, _ = _common(spec)
    a = c.mc2 + energy - c.sym_const
    big_n = spec.qn.n + _delta(1.0 + 4.0 * p.v1 * a / (a2 * hc2)) + 1.0
    return a * (c.mc2 - energy + p.v2) - a2 * hc2 * (p.v2 * a / (2.0 * a2 * hc2) / big_n + big_n) ** 2


def swave_pseudo_residual(energy, spec: EnergyResidualSpec):
    """kappa = +1 pseudospin equation, delta_{+1} form (C_ps from the context)."""
    p, c, a2, hc2, _ = _common(spec)
    b = c.mc2 - energy + c.sym_const
    big_n = spec.qn.n + _delta(1.0 - 4.0 * p.v1 * b / (a2 * hc2)) + 1.0
    return b * (c.mc2 + energy - p.v2) - a2 * hc2 * (-p.v2 * b / (2.0 * a2 * hc2) / big_n + big_n) ** 2


def eckart_spin_residual(energy, spec: EnergyResidualSpec):
    """Eckart-type kappa = -1 spin equation in terms of the Eckart depths."""
    p, c, a2, hc2, _ = _common(spec)
    a = c.mc2 + energy - c.sym_const
    big_n = spec.qn.n + _delta(1.0 - 4.0 * p.v1 * a / (a2 * hc2)) + 1.0
    return a * (c.mc2 - energy - p.v2) - a2 * hc2 * (-p.v2 * a / (2.0 * a2 * hc2) / big_n + big_n) ** 2


def eckart_pseudo_residual(energy, spec: EnergyResidualSpec):
    """Eckart-type kappa = +1 pseudospin equation in terms of the Eckart depths."""
    p, c, a2, hc2, _ = _common(spec)
    b = c.mc2 - energy + c.sym_const
    big_n = spec.qn.n + _delta(1.0 + 4.0 * p.v1 * b / (a2 * hc2)) + 1.0
    return b * (c.mc2 + energy + p.v2) - a2 * hc2 * (p.v2 * b / (2.0 * a2 * hc2) / big_n + big_n) ** 2


_RESIDUALS = {
    Branch.SPIN_GENERAL: spin_residual,
    Branch.SPIN_EXACT: spin_exact_residual,
    Branch.PSEUDOSPIN: pseudospin_residual,
    Branch.SWAVE_SPIN: swave_spin_residual,
    Branch.SWAVE_PSEUDO: swave_pseudo_residual,
    Branch.ECKART_SPIN: eckart_spin_residual,
    Branch.ECKART_PSEUDO: eckart_pseudo_residual,
}


def residual(energy, spec: EnergyResidualSpec):
    return _RESIDUALS[spec.branch](energy, spec)


def branch_delta(energy, spec: EnergyResidualSpec):
    """delta (spin), delta_1 (pseudospin) or the s-wave/Eckart variants at ``energy``."""
    phys = dataclasses.replace(
        spec,
        branch=Branch.SPIN_GENERAL if spec.branch.symmetry is Symmetry.SPIN else Branch.PSEUDOSPIN,
        params=spec.physical_params(),
        context=spec.physical_context(),
    )
    if phys.branch is Branch.SPIN_GENERAL:
        return spin_delta(energy, phys)
    return pseudospin_delta(energy, phys)


def branch_epsilon_sq(energy, spec: EnergyResidualSpec):
    _, _, eps2 = nu.rm_xi(spec.physical_params(), spec.physical_context(), spec.qn, energy,
                          spec.coeffs, spec.branch.symmetry)
    return eps2


def apply_case_map(spec: EnergyResidualSpec, case: CaseMap) -> EnergyResidualSpec:
    """Relabel a spec under one of the special-case maps.

    SPIN_TO_PSEUDOSPIN flips (V1, V2) and the symmetry constant, switches the
    branch to its mirror and kappa to -kappa (so omega maps onto omega_tilde).
    Energies of the image are the negatives of the original ones. ECKART
    flips (V1, V2). PT_SYMMETRIC replaces V2 by i V2.
    """
    p = spec.params
    if case is CaseMap.SPIN_TO_PSEUDOSPIN:
        if spec.branch is Branch.SPIN_EXACT:
            raise ValueError("map the general spin branch, not the C_s = 0 specialization")
        new_sym = Symmetry.PSEUDOSPIN if spec.context.symmetry is Symmetry.SPIN else Symmetry.SPIN
        return dataclasses.replace(
            spec,
            branch=_MIRROR[spec.branch],
            params=dataclasses.replace(p, v1=-p.v1, v2=-p.v2),
            context=dataclasses.replace(spec.context, symmetry=new_sym, sym_const=-spec.context.sym_const),
            qn=QuantumNumbers(spec.qn.n, -spec.qn.kappa),
            swapped=not spec.swapped,
        )
    if case is CaseMap.ECKART:
        return dataclasses.replace(spec, params=dataclasses.replace(p, v1=-p.v1, v2=-p.v2))
    if case is CaseMap.PT_SYMMETRIC:
        return dataclasses.replace(spec, params=dataclasses.replace(p, v2=1j * p.v2), pt=True)
    raise ValueError(f"unknown case map {case!r}")


def default_window(spec: EnergyResidualSpec, grid_points: int = 2000) -> SearchWindow | None:
    """Window from C < Mc^2 + E and E < Mc^2 + V2 (spin), mirrored for pseudospin."""
    c = spec.physical_context()
    v2 = float(np.real(spec.physical_params().v2))
    pad = 1e-9 * c.mc2
    if spec.branch.symmetry is Symmetry.SPIN:
        lo, hi = -c.mc2 + c.sym_const + pad, c.mc2 + v2 - pad
    else:
        lo, hi = -c.mc2 + v2 + pad, c.mc2 + c.sym_const - pad
    if not lo < hi:
        return None
    return SearchWindow(lo, hi, grid_points)


def _safe(f, x):
    try:
        v = f(x)
    except DomainError:
        return math.nan
    return v if math.isfinite(v) else math.nan


def _bisect(f, lo, hi, flo, tol):
    for _ in range(400):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = _safe(f, mid)
        if math.isnan(fm):
            return None
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _domain_edge(f, good, bad, tol):
    """Boundary between a valid point ``good`` and an invalid one ``bad``."""
    for _ in range(400):
        if abs(bad - good) <= tol:
            break
        mid = 0.5 * (good + bad)
        if math.isnan(_safe(f, mid)):
            bad = mid
        else:
            good = mid
    return good


def find_roots(f, lo, hi, points, tol, depth=0):
    """Sign-change roots of ``f`` on [lo, hi]; points where ``f`` raises DomainError are skipped."""
    xs = np.linspace(lo, hi, points)
    fs = [_safe(f, x) for x in xs]
    roots = []
    for i in range(points - 1):
        a, b = xs[i], xs[i + 1]
        fa, fb = fs[i], fs[i + 1]
        if math.isnan(fa) and math.isnan(fb):
            continue
        if math.isnan(fa) or math.isnan(fb):
            if depth >= 3:
                continue
            good, bad = (a, b) if math.isnan(fb) else (b, a)
            edge = _domain_edge(f, good, bad, tol)
            if abs(edge - good) > tol:
                sub_lo, sub_hi = min(good, edge), max(good, edge)
                roots.extend(find_roots(f, sub_lo, sub_hi, 33, tol, depth + 1))
            continue
        if fa == 0.0:
            roots.append(a)
            continue
        if (fa < 0) != (fb < 0):
            r = _bisect(f, a, b, fa, tol)
            if r is None and depth < 3:
                roots.extend(find_roots(f, a, b, 33, tol, depth + 1))
            elif r is not None:
                roots.append(r)
    if fs and fs[-1] == 0.0:
        roots.append(xs[-1])
    roots.sort()
    deduped = []
    for r in roots:
        if not deduped or r - deduped[-1] > 10 * tol:
            deduped.append(r)
    return deduped


def nu_relation_at(energy, spec: EnergyResidualSpec) -> float:
    """Parametric NU quantization condition for the physical well at ``energy`` (nan if undefined)."""
    try:
        prob = nu.rosen_morse_instance(spec.physical_params(), spec.physical_context(), spec.qn,
                                       energy, spec.coeffs, spec.branch.symmetry)
        return nu.energy_relation(prob, nu.derive(prob), spec.qn.n)
    except (nu.OutsideWindowError, nu.NUBranchError):
        return math.nan


def solve_bound_states(spec: EnergyResidualSpec, window: SearchWindow | None = None) -> list[BoundState]:
    """All roots of the branch's energy equation in ``window`` that pass the bound-state filters.

    Filters: epsilon^2 > 0, delta > 0, and the mass factor of the branch
    (Mc^2 + E - C_s on the spin side, Mc^2 - E + C_ps on the pseudospin side)
    strictly positive. Roots are refined to 1e-12 Mc^2 and returned sorted.
    """
    if window is None:
        window = default_window(spec)
        if window is None:
            return []
    c = spec.physical_context()
    tol = 1e-12 * c.mc2
    f = lambda e: residual(e, spec)  # noqa: E731
    states = []
    for e in find_roots(f, window.e_min, window.e_max, window.grid_points, tol):
        try:
            eps2 = branch_epsilon_sq(e, spec)
            delta = branch_delta(e, spec)
        except DomainError:
            continue
        if spec.branch.symmetry is Symmetry.SPIN:
            mass_factor = c.mc2 + e - c.sym_const
        else:
            mass_factor = c.mc2 - e + c.sym_const
        if not (eps2 > 0 and delta > 0 and mass_factor > tol):
            continue
        states.append(
            BoundState(
                energy=float(e),
                epsilon=math.sqrt(eps2),
                delta=float(delta),
                qn=spec.qn,
                branch=spec.branch.value,
                residual=float(f(e)),
                nu_residual=float(nu_relation_at(e, spec)),
                symmetry=spec.branch.symmetry,
            )
        )
    return states


def nonrelativistic_energy(n: int, l: int, params: PotentialParams, mu: float,
                           coeffs: PekerisCoeffs | None = None):
    """Schrodinger limit of the spin-symmetry spectrum.

    ``mu`` is mu / hbar^2 in the caller's units (Mc^2 / (hbar c)^2 for the
    relativistic problem). Complex ``params.v2`` is propagated with complex
    arithmetic.
    """
    coeffs = coeffs or matched_coeffs(params.alpha, params.r_e)
    w = l * (l + 1)
    a2 = params.alpha**2
    re2 = params.r_e**2
    rad = 1.0 + 8.0 * mu * params.v1 / a2 + w * coeffs.d2 / (a2 * re2)
    if rad < 0:
        raise DomainError(f"negative radicand {rad} in delta_0")
    delta0 = 0.5 * (-1.0 + math.sqrt(rad))
    d1 = nu._effective_d1(coeffs)
    num = mu * (2.0 * params.v1 + params.v2) / a2 - w * d1 / (4.0 * a2 * re2) + (n + 1) ** 2 + (2 * n + 1) * delta0
    return params.v2 + w * coeffs.d0 / (2.0 * mu * re2) - a2 / (2.0 * mu) * (num / (n + delta0 + 1.0)) ** 2


def nonrelativistic_delta0(l: int, params: PotentialParams, mu: float, coeffs: PekerisCoeffs) -> float:
    w = l * (l + 1)
    a2 = params.alpha**2
    return _delta(1.0 + 8.0 * mu * params.v1 / a2 + w * coeffs.d2 / (a2 * params.r_e**2))


def pt_energy_nonrel(n: int, l: int, params: PotentialParams, mu: float,
                     coeffs: PekerisCoeffs | None = None) -> complex:
    """Schrodinger spectrum of the PT-symmetric well ``-V1 sech^2 + i V2 tanh`` (real V1 > 0)."""
    if not params.v1 > 0:
        raise ValueError("the PT-symmetric spectrum needs real V1 > 0")
    coeffs = coeffs or matched_coeffs(params.alpha, params.r_e)
    v2 = float(np.real(params.v2))
    w = l * (l + 1)
    a2 = params.alpha**2
    re2 = params.r_e**2
    delta0 = 0.5 * (-1.0 + math.sqrt(1.0 + 8.0 * mu * params.v1 / a2 + w * coeffs.d2 / (a2 * re2)))
    d1 = nu._effective_d1(coeffs)
    num = (mu / a2) * (2.0 * params.v1 + 1j * v2) - w * d1 / (4.0 * a2 * re2) + (n + 1) ** 2 + (2 * n + 1) * delta0
    return 1j * v2 + w * coeffs.d0 / (2.0 * mu * re2) - (a2 / (2.0 * mu)) * (num / (n + delta0 + 1.0)) ** 2


def pt_spin_residual(energy: complex, spec: EnergyResidualSpec) -> complex:
    """PT-symmetric exact-spin equation (V2 -> i V2, C_s = 0) at complex ``energy``.

    ``spec.params.v2`` is the real amplitude; the square root in delta uses
    the principal branch.
    """
    p, c, a2, hc2, co = _common(spec)
    v2 = float(np.real(p.v2))
    w = spec.qn.omega
    energy = complex(energy)
    a = c.mc2 + energy
    delta = 0.5 * (-1.0 + cmath.sqrt(1.0 + w * co.d2 / (a2 * p.r_e**2) + 4.0 * p.v1 * a / (a2 * hc2)))
    big_n = spec.qn.n + delta + 1.0
    q = -1j * v2 * a / (2.0 * a2 * hc2) + w * (nu._effective_d1(co) + co.d2) / (4.0 * a2 * p.r_e**2)
    lhs = a * (c.mc2 - energy + 1j * v2) + w * co.d0 * hc2 / p.r_e**2
    return lhs - a2 * hc2 * (q / big_n - big_n) ** 2
