import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rmdirac import nu, spectra
from rmdirac.model import PhysicalContext, PotentialParams, QuantumNumbers, Symmetry
from rmdirac.pekeris import matched_coeffs
from rmdirac.specfun import jacobi_p

pos = st.floats(0.05, 20.0)


def unit_problem(b1, b2, e2):
    return nu.NUProblem(1.0, 1.0, 1.0, 1.0, b1, b2, e2)


@given(pos, pos, pos)
def test_table_of_parametric_constants(b1, e2, extra):
    # keep c10 = 1/4 + b1 - b2 + e2 positive
    b2 = min(b1 + e2, extra)
    d = nu.derive(unit_problem(b1, b2, e2))
    s10 = math.sqrt(0.25 + b1 - b2 + e2)
    eps = math.sqrt(e2)
    expected = dict(c5=0.0, c6=-0.5, c7=0.25 + b1, c8=-b2, c9=e2, c10=0.25 + b1 - b2 + e2,
                    c11=2 * eps, c12=2 * s10, c13=eps, c14=s10 + 0.5, c15=2 * s10, c16=s10 + 0.5)
    for name, value in expected.items():
        assert getattr(d, name) == pytest.approx(value, rel=1e-12, abs=1e-12), name


def test_zero_xi_arithmetic():
    p = unit_problem(0.0, 0.0, 0.0)
    d = nu.derive(p)
    assert (d.c7, d.c9, d.c10, d.c11, d.c12, d.c13) == (0.25, 0.0, 0.25, 0.0, 1.0, 0.0)
    # c14 = (sqrt(c10) - c4 c5 - c3 c6)/(c3 c4) = 1/2 + 1/2, i.e. delta + 1 with delta = 0
    assert d.c14 == 1.0
    assert nu.energy_relation(p, d, 0) == 1.0
    assert nu.key_polynomials(p, d).tau.deriv().coef[0] == -3.0


def test_negative_branch_constants_raise():
    with pytest.raises(nu.NUBranchError) as err:
        nu.derive(unit_problem(0.0, 0.0, -1.0))
    assert err.value.name == "c9" and err.value.value == -1.0
    with pytest.raises(nu.NUBranchError) as err:
        nu.derive(unit_problem(0.0, 10.0, 0.0))
    assert err.value.name == "c10"


def test_problem_validation():
    with pytest.raises(ValueError):
        nu.NUProblem(1, 1, 0.0, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        nu.NUProblem(1, 1, 1, 1, math.inf, 0, 0)


def test_negativity_condition_violation():
    # c4 < 0 with small c10 makes tau' positive
    p = nu.NUProblem(1.0, -3.0, 1.0, -1.0, 0.0, 0.0, 0.0)
    with pytest.raises(nu.NUConditionError):
        nu.key_polynomials(p, nu.derive(p))


@given(pos, pos, pos)
def test_key_polynomials_of_the_unit_problem(b1, e2, extra):
    b2 = min(b1 + e2, extra)
    p = unit_problem(b1, b2, e2)
    d = nu.derive(p)
    kp = nu.key_polynomials(p, d)
    eps = math.sqrt(e2)
    delta = math.sqrt(d.c10) - 0.5
    np.testing.assert_allclose(kp.pi.coef, [eps, -(1 + eps + delta)], rtol=1e-12, atol=1e-12)
    assert kp.k == pytest.approx(b2 - (2 * e2 + (2 * delta + 1) * eps), rel=1e-10, abs=1e-10)
    assert kp.tau.deriv().coef[0] < 0


def _random_spin_instance(rng, symmetry=Symmetry.SPIN):
    alpha = rng.uniform(0.2, 2.0)
    p = PotentialParams(rng.uniform(0.1, 5.0), rng.uniform(-3.0, 3.0), alpha, rng.uniform(0.3, 2.0) / alpha)
    c = PhysicalContext(rng.uniform(2.0, 10.0), 1.0, symmetry, rng.uniform(-0.5, 0.5))
    kappa = int(rng.choice([-3, -2, -1, 1, 2, 3]))
    if symmetry is Symmetry.SPIN and kappa == -1:
        kappa = -2
    return p, c, QuantumNumbers(0, kappa)


def test_c10_equals_shifted_delta_squared_spin():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 100:
        p, c, qn = _random_spin_instance(rng)
        spec = spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, p, c, qn)
        e = rng.uniform(-c.mc2 + c.sym_const + 0.1, c.mc2)
        b1, b2, e2 = nu.rm_xi(p, c, qn, e, spec.coeffs)
        try:
            delta = spectra.spin_delta(e, spec)
        except spectra.DomainError:
            continue
        c10 = 0.25 + b1 - b2 + e2
        assert c10 == pytest.approx((delta + 0.5) ** 2, rel=1e-10)
        checked += 1


def test_c10_equals_shifted_delta_squared_pseudospin():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 100:
        p, c, qn = _random_spin_instance(rng, Symmetry.PSEUDOSPIN)
        spec = spectra.EnergyResidualSpec(spectra.Branch.PSEUDOSPIN, p, c, qn)
        e = rng.uniform(-c.mc2, c.mc2 + c.sym_const - 0.1)
        b1, b2, e2 = nu.rm_xi(p, c, qn, e, spec.coeffs)
        try:
            delta = spectra.pseudospin_delta(e, spec)
        except spectra.DomainError:
            continue
        assert 0.25 + b1 - b2 + e2 == pytest.approx((delta + 0.5) ** 2, rel=1e-10)
        checked += 1


def test_beta_collapse_identity():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p, c, qn = _random_spin_instance(rng)
        co = matched_coeffs(p.alpha, p.r_e)
        e = rng.uniform(-c.mc2, c.mc2)
        b1, b2, e2 = nu.rm_xi(p, c, qn, e, co)
        rhs = (qn.omega * co.d2 / p.r_e**2 + 4 * p.v1 * (c.mc2 + e - c.sym_const)) / (4 * p.alpha**2)
        assert b1 - b2 + e2 == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_s_wave_instance_has_no_centrifugal_terms():
    p = PotentialParams(2.0, 0.5, 0.7, 1.3)
    c = PhysicalContext(4.0)
    qn = QuantumNumbers(0, -1)
    a = nu.rm_xi(p, c, qn, 0.3, matched_coeffs(0.7, 1.3))
    b = nu.rm_xi(p, c, qn, 0.3, matched_coeffs(0.7, 0.4))
    assert a == b


@given(st.floats(0.1, 4.0), st.floats(-2.0, 2.0), st.floats(-0.5, 0.5), st.sampled_from([-3, -2, 1, 2, 3]),
       st.floats(-0.9, 0.9))
def test_pseudospin_instance_is_mapped_spin_instance(v1, v2, cps, kappa, e_frac):
    p = PotentialParams(v1, v2, 0.6, 1.5)
    mc2 = 5.0
    e = e_frac * mc2
    co = matched_coeffs(0.6, 1.5)
    pseudo = nu.rm_xi(p, PhysicalContext(mc2, 1.0, Symmetry.PSEUDOSPIN, cps), QuantumNumbers(0, kappa), e, co)
    mapped = nu.rm_xi(PotentialParams(-v1, -v2, 0.6, 1.5), PhysicalContext(mc2, 1.0, Symmetry.SPIN, -cps),
                      QuantumNumbers(0, -kappa), -e, co)
    np.testing.assert_allclose(pseudo, mapped, rtol=1e-12, atol=1e-12)


def test_instance_outside_window():
    p = PotentialParams(3.0, 1.0, 0.5, 2.0)
    with pytest.raises(nu.OutsideWindowError):
        nu.rosen_morse_instance(p, PhysicalContext(5.0), QuantumNumbers(0, -1), 6.5, matched_coeffs(0.5, 2.0))


def _nu_branch_states(params, n):
    spec = spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, params, PhysicalContext(5.0),
                                      QuantumNumbers(n, -2))
    return spec, spectra.solve_bound_states(spec)


@pytest.mark.parametrize("n, energy", [(0, -3.8720644724656705), (1, -3.6368785028758936)])
def test_quantization_holds_on_polynomial_branch(nu_branch_params, n, energy):
    spec, states = _nu_branch_states(nu_branch_params, n)
    match = [s for s in states if abs(s.energy - energy) < 1e-8]
    assert len(match) == 1
    e = match[0].energy
    prob = nu.rosen_morse_instance(nu_branch_params, spec.context, spec.qn, e, spec.coeffs)
    d = nu.derive(prob)
    assert abs(nu.energy_relation(prob, d, n)) < 1e-9
    assert abs(nu.energy_relation(prob, d, n + 1)) > 1e-3
    assert nu.key_polynomials(prob, d).tau.deriv().coef[0] < 0


def test_quantization_roots_solve_energy_equation(nu_branch_params):
    # roots of the NU condition are roots of the closed-form energy equation
    spec, states = _nu_branch_states(nu_branch_params, 0)
    nu_roots = spectra.find_roots(lambda e: spectra.nu_relation_at(e, spec), -4.999, 3.999, 4000, 1e-12)
    nu_roots = [e for e in nu_roots if abs(spectra.nu_relation_at(e, spec)) < 1e-6]
    assert nu_roots
    energies = [s.energy for s in states]
    for e in nu_roots:
        assert min(abs(e - x) for x in energies) < 1e-9


def test_energy_equation_roots_satisfy_quantization(sample_params):
    for kappa in (-2, -1):
        spec = spectra.EnergyResidualSpec(spectra.Branch.SPIN_GENERAL, sample_params, PhysicalContext(5.0),
                                          QuantumNumbers(0, kappa))
        for s in spectra.solve_bound_states(spec):
            assert abs(spectra.nu_relation_at(s.energy, spec)) < 1e-9


def test_wavefunction_factory_ground_state():
    p = unit_problem(1.2, 0.7, 0.9)
    d = nu.derive(p)
    psi = nu.wavefunction_factory(p, d, 0)
    z = np.linspace(0.01, 0.99, 7)
    np.testing.assert_allclose(psi(z), z**d.c13 * (1 - z) ** d.c14, rtol=1e-14)
    assert nu.wavefunction_factory(p, d, 2)(1e-12) < 1e-5


@given(pos, pos, pos, st.integers(0, 6))
def test_wavefunction_factory_matches_jacobi_form(b1, e2, extra, n):
    b2 = min(b1 + e2, extra)
    p = unit_problem(b1, b2, e2)
    d = nu.derive(p)
    eps, delta = math.sqrt(e2), math.sqrt(d.c10) - 0.5
    z = np.linspace(0.02, 0.98, 25)
    direct = z**eps * (1 - z) ** (delta + 1) * jacobi_p(n, 2 * eps, 2 * delta + 1, 1 - 2 * z)
    got = nu.wavefunction_factory(p, d, n)(z)
    scale = np.max(np.abs(direct))
    assert np.max(np.abs(got - direct)) <= 1e-12 * max(scale, 1e-300)


def test_wavefunction_factory_rejects_bad_ranges():
    p = unit_problem(0.0, 0.0, 0.0)
    with pytest.raises(ValueError, match="c13"):
        nu.wavefunction_factory(p, nu.derive(p), 0)
    q = nu.NUProblem(1.0, 1.0, 1.0, 0.0, 0.5, 0.1, 0.3)
    with pytest.raises(ValueError):
        nu.wavefunction_factory(q, nu.derive(q), 0)


def test_laguerre_limit_values():
    p = nu.NUProblem(0.5, 1.5, 1.0, 0.0, 0.3, 0.4, 0.6)
    d = nu.derive(p)
    r = np.linspace(0.1, 4.0, 9)
    np.testing.assert_allclose(nu.laguerre_limit(p, d, 0, r), np.exp(-d.c16 * r), rtol=1e-15)
    with pytest.raises(ValueError):
        nu.laguerre_limit(unit_problem(1, 1, 1), nu.derive(unit_problem(1, 1, 1)), 0, r)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_jacobi_form_tends_to_laguerre_form(n):
    base = dict(c1=0.5, c2=2.5, c3=1.0, xi1=0.3, xi2=0.4, xi3=0.6)
    lp = nu.NUProblem(c4=0.0, **base)
    ld = nu.derive(lp)
    r = np.array([0.3, 1.0, 2.5])
    target = nu.laguerre_limit(lp, ld, n, r)
    errors = []
    for k in range(4, 9):
        p = nu.NUProblem(c4=10.0**-k, **base)
        d = nu.derive(p)
        approx = nu.wavefunction_factory(p, d, n)(r) / r**d.c13
        # normalize the Jacobi form to the Laguerre convention at r -> 0
        approx = approx * math.factorial(n) / np.prod([d.c12 + j for j in range(1, n + 1)]) if n else approx
        ref = target * ld.c15**0  # same units
        errors.append(np.max(np.abs(approx / approx[0] - ref / ref[0])))
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 1e-6
