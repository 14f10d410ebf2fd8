"""Acceptance suite: closed forms against the oracle, identities and self-tests.

Each ``criterion_*`` function is standalone and returns a ``CriterionResult``
with the measured quantities. ``run_all`` runs them in order; the CLI and the
test suite both go through it.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import nu, oracle, spectra, specfun, wavefun
from .model import BoundState, PhysicalContext, PotentialParams, QuantumNumbers, Symmetry
from .pekeris import contact_residuals, matched_coeffs, max_deviation, published_coeffs


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    measured: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        keys = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{status}] criterion {self.number}: {self.title} ({keys})"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


@dataclass(frozen=True)
class ValidationConfig:
    """Sample well and knobs for the suite; defaults are the reference configuration."""

    mc2: float = 5.0
    hbarc: float = 1.0
    v1: float = 3.0
    v2: float = 1.0
    alpha: float = 0.5
    r_e: float = 2.0
    max_n: int = 2
    oracle_points: int = 4000
    seed: int = 20240611
    # test hook: relative perturbation applied to delta before the ODE check
    corrupt_delta: float = 0.0

    def params(self) -> PotentialParams:
        return PotentialParams(self.v1, self.v2, self.alpha, self.r_e)

    def context(self, symmetry=Symmetry.SPIN, sym_const=0.0) -> PhysicalContext:
        return PhysicalContext(self.mc2, self.hbarc, symmetry, sym_const)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@dataclass
class _Pairing:
    spec: spectra.EnergyResidualSpec
    state: BoundState
    oracle_energy: float
    rel_gap: float
    confirmed: bool


def _pair_with_oracle(spec, states, centrifugal, tol, cfg):
    """Match each analytic state with the nearest oracle state for the same n."""
    phys, ctx = spec.physical_params(), spec.physical_context()
    found = oracle.self_consistent_energies(spec.qn.n, phys, ctx, spec.qn, centrifugal,
                                            points=cfg.oracle_points, coeffs=spec.coeffs)
    out = []
    for st in states:
        if found:
            best = min(found, key=lambda res: abs(res.energy - st.energy))
            gap = _rel(st.energy, best.energy)
            out.append(_Pairing(spec, st, best.energy, gap, gap <= tol))
        else:
            out.append(_Pairing(spec, st, math.nan, math.inf, False))
    return out, found


def _exact_case(cfg: ValidationConfig):
    params, ctx = cfg.params(), cfg.context()
    pairs, oracle_only = [], 0
    for n in range(cfg.max_n + 1):
        spec = spectra.EnergyResidualSpec(spectra.Branch.SWAVE_SPIN, params, ctx, QuantumNumbers(n, -1))
        states = spectra.solve_bound_states(spec)
        if not states:
            break
        got, found = _pair_with_oracle(spec, states, oracle.Centrifugal.EXACT, 1e-6, cfg)
        pairs += got
        oracle_only += max(0, len(found) - sum(p.confirmed for p in got))
    return pairs, oracle_only


def _approx_specs(cfg: ValidationConfig):
    params = cfg.params()
    mirrored = dataclasses.replace(params, v1=-params.v1, v2=-params.v2)
    for kappa in (1, 2, -2):
        for n in range(cfg.max_n + 1):
            qn = QuantumNumbers(n, kappa)
            yield spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, params, cfg.context(), qn)
            yield spectra.EnergyResidualSpec(spectra.Branch.PSEUDOSPIN, mirrored,
                                             cfg.context(Symmetry.PSEUDOSPIN), qn)


def _approx_case(cfg: ValidationConfig):
    pairs, gaps = [], []
    for spec in _approx_specs(cfg):
        states = spectra.solve_bound_states(spec)
        if not states:
            continue
        got, _ = _pair_with_oracle(spec, states, oracle.Centrifugal.PEKERIS, 1e-5, cfg)
        pairs += got
        for p in got:
            if p.confirmed:
                exact = oracle.self_consistent_energy(spec.qn.n, spec.physical_params(), spec.physical_context(),
                                                      spec.qn, oracle.Centrifugal.EXACT,
                                                      near=p.oracle_energy, points=cfg.oracle_points)
                gaps.append(_rel(p.oracle_energy, exact.energy))
    return pairs, gaps


def criterion_1(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    pairs, oracle_only = _exact_case(cfg)
    seconds = time.perf_counter() - t0
    worst = max((p.rel_gap for p in pairs), default=math.nan)
    confirmed = sum(p.confirmed for p in pairs)
    passed = bool(pairs) and confirmed == len(pairs) and seconds < 30.0
    res = CriterionResult(
        1, "kappa=-1 exact-case analytic roots vs oracle (rel 1e-6)", passed,
        {"analytic_states": len(pairs), "confirmed": confirmed, "worst_rel_gap": worst,
         "unmatched_oracle_states": oracle_only, "seconds": seconds},
    )
    for p in pairs:
        res.notes.append(f"n={p.state.qn.n} E_analytic={p.state.energy:.12g} "
                         f"E_oracle={p.oracle_energy:.12g} rel_gap={p.rel_gap:.3e}")
    return res


def criterion_2(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    pairs, gaps = _approx_case(cfg)
    confirmed = sum(p.confirmed for p in pairs)
    worst = max((p.rel_gap for p in pairs), default=math.nan)
    res = CriterionResult(
        2, "kappa in {1,2,-2} Pekeris-mode oracle vs spin/pseudospin roots (rel 1e-5)",
        bool(pairs) and confirmed == len(pairs),
        {"analytic_states": len(pairs), "confirmed": confirmed, "worst_rel_gap": worst,
         "max_exact_mode_gap": max(gaps, default=math.nan)},
        seconds=time.perf_counter() - t0,
    )
    for p in pairs:
        res.notes.append(f"{p.spec.branch.value} kappa={p.state.qn.kappa} n={p.state.qn.n} "
                         f"E_analytic={p.state.energy:.12g} E_oracle={p.oracle_energy:.12g} "
                         f"rel_gap={p.rel_gap:.3e}")
    return res


def _random_spin_spec(rng):
    mc2 = rng.uniform(1.0, 10.0)
    params = PotentialParams(rng.uniform(-3.0, 3.0) * mc2, rng.uniform(-1.0, 1.0) * mc2,
                             rng.uniform(0.2, 2.0), 1.0)
    params = dataclasses.replace(params, r_e=rng.uniform(0.5, 2.0) / params.alpha)
    ctx = PhysicalContext(mc2, rng.uniform(0.5, 2.0), Symmetry.SPIN, rng.uniform(-0.5, 0.5) * mc2)
    kappa = int(rng.choice([-3, -2, -1, 1, 2, 3]))
    qn = QuantumNumbers(int(rng.integers(0, 3)), kappa)
    return spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, params, ctx, qn)


def criterion_3(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    worst, compared, count_mismatch = 0.0, 0, 0
    for _ in range(50):
        spin = _random_spin_spec(rng)
        pseudo = spectra.apply_case_map(spin, spectra.CaseMap.SPIN_TO_PSEUDOSPIN)
        e_spin = [s.energy for s in spectra.solve_bound_states(spin)]
        e_pseudo = sorted(-s.energy for s in spectra.solve_bound_states(pseudo))
        if len(e_spin) != len(e_pseudo):
            count_mismatch += 1
            continue
        for a, b in zip(e_spin, e_pseudo):
            worst = max(worst, abs(a - b) / spin.context.mc2)
            compared += 1
    seconds = time.perf_counter() - t0
    return CriterionResult(
        3, "pseudospin roots equal mapped spin roots (1e-10 Mc^2, 50 sets)",
        count_mismatch == 0 and worst <= 1e-10 and seconds < 60.0,
        {"roots_compared": compared, "root_count_mismatches": count_mismatch,
         "worst_gap_over_mc2": worst, "seconds": seconds},
    )


def _candidate_solutions(cfg):
    """Oracle-confirmed states of criteria 1-2, or every analytic candidate when none are confirmed."""
    pairs, _ = _exact_case(cfg)
    approx, _ = _approx_case(cfg)
    pairs += approx
    confirmed = [p for p in pairs if p.confirmed]
    return (confirmed or pairs), len(confirmed)


def criterion_4(cfg: ValidationConfig, pairs=None) -> CriterionResult:
    t0 = time.perf_counter()
    if pairs is None:
        pairs, n_confirmed = _candidate_solutions(cfg)
    else:
        n_confirmed = sum(p.confirmed for p in pairs)
    worst_res, node_bad, bc_bad = 0.0, 0, 0
    for p in pairs:
        st = p.state
        if cfg.corrupt_delta:
            st = dataclasses.replace(st, delta=st.delta * (1.0 + cfg.corrupt_delta))
        sol = wavefun.SpinorSolution.from_spec(p.spec, st)
        a = sol.params.alpha
        r_cut = wavefun.tail_cutoff(sol)
        grid = np.linspace(0.05 / a, r_cut, 600)
        worst_res = max(worst_res, float(np.max(np.abs(wavefun.ode_residual(sol, grid)))))
        dense = np.linspace(1e-4 / a, r_cut, 20000)
        vals = wavefun.primary_component(dense, sol)
        if wavefun.count_nodes(vals) != st.qn.n:
            node_bad += 1
        peak = float(np.max(np.abs(vals)))
        ends = wavefun.primary_component(np.array([1e-4 / a, r_cut]), sol)
        if np.any(np.abs(ends) >= 1e-8 * peak):
            bc_bad += 1
    passed = n_confirmed > 0 and worst_res < 1e-6 and node_bad == 0 and bc_bad == 0
    res = CriterionResult(
        4, "ODE residual < 1e-6, node count = n, boundary decay", passed,
        {"oracle_confirmed_states": n_confirmed, "states_checked": len(pairs),
         "max_scaled_residual": worst_res, "node_count_failures": node_bad,
         "boundary_failures": bc_bad},
        seconds=time.perf_counter() - t0,
    )
    if n_confirmed == 0:
        res.notes.append("0 oracle-confirmed states; checks ran on the analytic candidates")
    return res


def criterion_5(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed + 5)
    worst_unit, worst_cf = 0.0, 0.0
    for _ in range(10):
        eps, delta, alpha = rng.uniform(0.2, 5.0), rng.uniform(0.1, 6.0), rng.uniform(0.2, 2.0)
        for n in range(4):
            st = BoundState(0.0, eps, delta, QuantumNumbers(n, -1), spectra.Branch.SPIN_GENERAL.value)
            sol = wavefun.SpinorSolution(st, spectra.Branch.SPIN_GENERAL, PotentialParams(1.0, 0.0, alpha, 1.0 / alpha),
                                         PhysicalContext(1.0), matched_coeffs(alpha, 1.0 / alpha))
            nq = wavefun.normalization_quadrature(sol)
            # re-integrate the normalized function on a different panel layout and cut
            r_cut = 1.25 * wavefun.tail_cutoff(sol)
            unit = wavefun.integral_of_square(
                lambda r: nq * wavefun.canonical_raw(r, alpha, n, eps, delta), r_cut, alpha, panels=23)
            worst_unit = max(worst_unit, abs(unit - 1.0))
            worst_cf = max(worst_cf, _rel(wavefun.normalization_closed_form(sol), nq))
    return CriterionResult(
        5, "normalization: unit integral (1e-10), closed form vs quadrature (1e-5)",
        worst_unit <= 1e-10 and worst_cf <= 1e-5,
        {"max_unit_error": worst_unit, "max_closed_form_rel_gap": worst_cf},
        seconds=time.perf_counter() - t0,
    )


def _constants_error(rng):
    beta2 = rng.uniform(0.1, 5.0)
    eps2 = rng.uniform(0.1, 5.0)
    beta1 = beta2 + rng.uniform(0.0, 5.0)
    p = nu.NUProblem(1.0, 1.0, 1.0, 1.0, beta1, beta2, eps2)
    d = nu.derive(p)
    eps = math.sqrt(eps2)
    delta = math.sqrt(0.25 + beta1 - beta2 + eps2) - 0.5
    expected = {
        "c5": 0.0, "c6": -0.5, "c7": 0.25 + beta1, "c8": -beta2, "c9": eps2,
        "c10": (delta + 0.5) ** 2, "c11": 2 * eps, "c12": 2 * delta + 1, "c13": eps,
        "c14": delta + 1, "c15": 2 * delta + 1, "c16": delta + 1,
    }
    return max(abs(getattr(d, k) - v) / max(1.0, abs(v)) for k, v in expected.items())


def _c10_identity_error(rng, symmetry):
    spec = _random_spin_spec(rng)
    if symmetry is Symmetry.PSEUDOSPIN:
        spec = spectra.apply_case_map(spec, spectra.CaseMap.SPIN_TO_PSEUDOSPIN)
    window = spectra.default_window(spec)
    if window is None:
        return None
    e = rng.uniform(window.e_min, window.e_max)
    try:
        prob = nu.rosen_morse_instance(spec.params, spec.context, spec.qn, e, spec.coeffs, symmetry)
        d = nu.derive(prob)
        delta = spectra.branch_delta(e, spec)
    except (nu.OutsideWindowError, nu.NUBranchError, spectra.DomainError):
        return None
    return abs(d.c10 - (delta + 0.5) ** 2) / max(1.0, d.c10)


def criterion_6(cfg: ValidationConfig, pairs=None) -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed + 6)
    constants_err = max(_constants_error(rng) for _ in range(100))
    c10_errs = []
    while len(c10_errs) < 100:
        sym = Symmetry.SPIN if len(c10_errs) % 2 == 0 else Symmetry.PSEUDOSPIN
        err = _c10_identity_error(rng, sym)
        if err is not None:
            c10_errs.append(err)
    c10 = max(c10_errs)
    zero = nu.NUProblem(1, 1, 1, 1, 0, 0, 0)
    zero_val = nu.energy_relation(zero, nu.derive(zero), 0)
    if pairs is None:
        pairs, n_confirmed = _candidate_solutions(cfg)
    else:
        n_confirmed = sum(p.confirmed for p in pairs)
    a10 = max((abs(p.state.nu_residual) if math.isfinite(p.state.nu_residual) else math.inf
               for p in pairs), default=math.nan)
    passed = constants_err <= 1e-12 and c10 <= 1e-10 and zero_val == 1.0 and a10 < 1e-9
    res = CriterionResult(
        6, "NU engine: parametric constants, c10 identity, quantization relation at confirmed roots, zero-xi example", passed,
        {"constants_max_err": constants_err, "c10_max_err": c10, "quantization_max_abs": a10,
         "quantization_states": len(pairs), "oracle_confirmed_states": n_confirmed, "zero_xi_value": zero_val},
        seconds=time.perf_counter() - t0,
    )
    if n_confirmed == 0:
        res.notes.append("0 oracle-confirmed states; quantization relation evaluated at every analytic candidate")
    return res


def criterion_7(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    worst = 0.0
    notes = []
    for y in (0.5, 1.0, 2.0, 5.0, 10.0):
        alpha = cfg.alpha
        r_e = y / alpha
        m = matched_coeffs(alpha, r_e)
        worst = max(worst, max(abs(v) for v in contact_residuals(m, alpha, r_e)))
        try:
            p = published_coeffs(alpha, r_e)
            pres = contact_residuals(p, alpha, r_e)
            notes.append(
                f"alpha*r_e={y}: matched D=({m.d0:.6g}, {m.d1:.6g}, {m.d2:.6g}) "
                f"published D=({p.d0:.6g}, {p.d1:.6g}, {p.d2:.6g}); published contact residuals "
                f"({pres[0]:.3e}, {pres[1]:.3e}, {pres[2]:.3e}); max deviation on [0.5, 2] r_e: "
                f"matched {max_deviation(m, alpha, r_e):.3e}, published {max_deviation(p, alpha, r_e):.3e}"
            )
        except OverflowError as exc:
            notes.append(f"alpha*r_e={y}: published coefficients not representable ({exc})")
    return CriterionResult(
        7, "contact-matched Pekeris coefficients satisfy the contact identities (1e-10)",
        worst <= 1e-10, {"max_contact_residual": worst}, notes, time.perf_counter() - t0,
    )


def criterion_8(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    params = cfg.params()
    qn = QuantumNumbers(0, -1)
    gaps = []
    rel = math.nan
    for scale in (10, 100, 1000):
        mc2 = cfg.mc2 * scale
        ctx = PhysicalContext(mc2, cfg.hbarc)
        mu = mc2 / cfg.hbarc**2
        e60 = spectra.nonrelativistic_energy(qn.n, qn.l, params, mu)
        states = spectra.solve_bound_states(spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, params, ctx, qn))
        if not states:
            gaps.append(math.inf)
            continue
        e_dirac = min((s.energy - mc2 for s in states), key=lambda e: abs(e - e60))
        gaps.append(abs(e_dirac - e60))
        rel = abs(e_dirac - e60) / abs(e60)
    monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    return CriterionResult(
        8, "nonrelativistic limit: gap shrinks monotonically, final rel gap < 1e-2",
        monotone and rel < 1e-2,
        {"gaps": [float(f"{g:.3e}") for g in gaps], "final_rel_gap": rel},
        seconds=time.perf_counter() - t0,
    )


def criterion_9(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    box = oracle.eigenvalues_fd(lambda r: 0.0 * r, oracle.GridSpec(0.0, 1.0, 4000), 3)
    box_err = max(_rel(v, (k * math.pi) ** 2) for k, v in enumerate(box, start=1))
    osc = oracle.eigenvalues_fd(lambda r: r * r, oracle.GridSpec(0.0, 20.0, 4000), 3)
    osc_err = max(_rel(v, t) for v, t in zip(osc, (3.0, 7.0, 11.0)))
    errs = []
    for pts in (1000, 2000):
        v = oracle.eigenvalues_fd(lambda r: r * r, oracle.GridSpec(0.0, 20.0, pts), 1)[0]
        errs.append(abs(v - 3.0))
    order = math.log2(errs[0] / errs[1])
    return CriterionResult(
        9, "oracle self-tests: box and half-oscillator (1e-4), order 2.0 +- 0.2",
        box_err <= 1e-4 and osc_err <= 1e-4 and abs(order - 2.0) <= 0.2,
        {"box_rel_err": box_err, "oscillator_rel_err": osc_err, "order": order},
        seconds=time.perf_counter() - t0,
    )


def criterion_10(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    checks = {
        "ln_gamma(1)": abs(specfun.ln_gamma(1.0)),
        "ln_gamma(5)": abs(specfun.ln_gamma(5.0) - math.log(24.0)),
        "ln_gamma(0.5)": abs(specfun.ln_gamma(0.5) - 0.5 * math.log(math.pi)),
        "(x)_0": abs(specfun.pochhammer(2.7, 0) - 1.0),
        "(0)_3": abs(specfun.pochhammer(0.0, 3)),
        "(3)_2": abs(specfun.pochhammer(3.0, 2) - 12.0),
        "P0": abs(specfun.jacobi_p(0, 0.3, 0.7, 0.2) - 1.0),
        "P1(2,3;0.5)": abs(specfun.jacobi_p(1, 2.0, 3.0, 0.5) - 1.25),
        "2F1 z=0": abs(specfun.hyp2f1(0.3, 1.7, 2.2, 0.0) - 1.0),
        "2F1(-1,2;3;0.5)": abs(specfun.hyp2f1(-1, 2, 3, 0.5) - 2.0 / 3.0),
        "2F1(1,1;2;0.5)": abs(specfun.hyp2f1(1, 1, 2, 0.5) - 2.0 * math.log(2.0)),
        "3F2 a2=0": abs(specfun.hyp3f2_unit(1.3, 0.0, 2.1, 0.4, 1.7) - 1.0),
        "3F2(-1,2,3;4,5;1)": abs(specfun.hyp3f2_unit(-1, 2, 3, 4, 5) - 0.7),
        "GL2 x^2": abs(specfun.gauss_legendre(2).integrate(lambda x: x * x, -1.0, 1.0) - 2.0 / 3.0),
        "GL16 x^2 on [0,1]": abs(specfun.gauss_legendre(16).integrate(lambda x: x * x, 0.0, 1.0) - 1.0 / 3.0),
    }
    trivial = max(checks.values())
    rng = np.random.default_rng(cfg.seed + 10)
    deriv, jac = 0.0, 0.0
    h = 1e-5
    for _ in range(50):
        a, b, c = rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.5, 4)
        z = rng.uniform(-0.5, 0.5)
        num = (specfun.hyp2f1(a, b, c, z + h) - specfun.hyp2f1(a, b, c, z - h)) / (2 * h)
        ana = a * b / c * specfun.hyp2f1(a + 1, b + 1, c + 1, z)
        deriv = max(deriv, abs(num - ana) / max(1.0, abs(ana)))
        n = int(rng.integers(0, 11))
        pa, pb = rng.uniform(-0.9, 4), rng.uniform(-0.9, 4)
        zz = rng.uniform(-1.0, 1.0)
        lhs = specfun.jacobi_p(n, pa, pb, 1 - 2 * zz)
        rhs = specfun.pochhammer(pa + 1, n) / math.factorial(n) * specfun.hyp2f1(-n, n + pa + pb + 1, pa + 1, zz)
        jac = max(jac, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return CriterionResult(
        10, "special functions: identities, derivative relation (1e-7), Jacobi/2F1 (1e-11)",
        trivial <= 1e-13 and deriv <= 1e-7 and jac <= 1e-11,
        {"max_identity_err": trivial, "derivative_err": deriv, "jacobi_2f1_err": jac},
        seconds=time.perf_counter() - t0,
    )


def criterion_11(cfg: ValidationConfig) -> CriterionResult:
    t0 = time.perf_counter()
    params = cfg.params()
    mu = cfg.mc2 / cfg.hbarc**2
    worst_nr = 0.0
    for n in range(3):
        for l in range(3):
            pt = spectra.pt_energy_nonrel(n, l, params, mu)
            sub = spectra.nonrelativistic_energy(n, l, dataclasses.replace(params, v2=1j * params.v2), mu)
            worst_nr = max(worst_nr, abs(pt - sub) / max(1.0, abs(sub)))
    zero_v2 = dataclasses.replace(params, v2=0.0)
    worst_rel = 0.0
    for kappa in (-1, 1, -2, 2):
        spec = spectra.EnergyResidualSpec(spectra.Branch.SPIN_EXACT, zero_v2, cfg.context(), QuantumNumbers(1, kappa))
        for e in np.linspace(-0.9 * cfg.mc2, 0.9 * cfg.mc2, 21):
            try:
                real = spectra.spin_exact_residual(e, spec)
            except spectra.DomainError:
                continue
            cplx = spectra.pt_spin_residual(complex(e), spec)
            worst_rel = max(worst_rel, abs(cplx - real) / max(1.0, abs(real)))
    return CriterionResult(
        11, "PT case: V2 -> i V2 substitution (1e-12), complex residual reduces at V2 = 0",
        worst_nr <= 1e-12 and worst_rel <= 1e-12,
        {"nonrel_substitution_err": worst_nr, "residual_reduction_err": worst_rel},
        seconds=time.perf_counter() - t0,
    )


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11,
}


def informational(cfg: ValidationConfig) -> list[str]:
    """Non-fatal findings reported next to the criteria."""
    out = []
    a, r_e = cfg.alpha, cfg.r_e
    m = matched_coeffs(a, r_e)
    try:
        p = published_coeffs(a, r_e)
        out.append(f"published Pekeris D1 = {p.d1:.10g} vs contact-matched D1 = {m.d1:.10g} "
                   f"(D0, D2 differences {p.d0 - m.d0:.3e}, {p.d2 - m.d2:.3e})")
    except OverflowError:
        out.append("published Pekeris coefficients overflow for this alpha*r_e")
    # the exact-spin equation drops C_s everywhere, including inside the squared bracket
    qn = QuantumNumbers(0, -2)
    general = spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, cfg.params(), cfg.context(), qn)
    exact = spectra.EnergyResidualSpec(spectra.Branch.SPIN_EXACT, cfg.params(), cfg.context(sym_const=0.3 * cfg.mc2), qn)
    e = 0.1 * cfg.mc2
    try:
        gap = spectra.spin_residual(e, general) - spectra.spin_exact_residual(e, exact)
        out.append(f"exact-spin equation uses C_s = 0 in every term; gap to the general equation at C_s = 0: {gap:.1e}")
    except spectra.DomainError:
        pass
    out.append("analytic states whose parametric NU relation does not vanish are flagged by nu_residual")
    return out


def run_all(cfg: ValidationConfig | None = None, only=None) -> list[CriterionResult]:
    cfg = cfg or ValidationConfig()
    results = []
    shared = None
    for k, fn in CRITERIA.items():
        if only and k not in only:
            continue
        if k in (4, 6):
            if shared is None:
                shared = _candidate_solutions(cfg)[0]
            results.append(fn(cfg, shared))
        else:
            results.append(fn(cfg))
    return results
