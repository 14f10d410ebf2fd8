import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from rmdirac import oracle
from rmdirac.model import PhysicalContext, PotentialParams, QuantumNumbers, Symmetry
from rmdirac.oracle import Centrifugal, GridSpec

CTX = PhysicalContext(5.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(1.0, 1.0, 400)
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, 199)
    g = GridSpec(0.0, 1.0, 999)
    assert g.h == pytest.approx(1e-3)
    assert g.nodes()[0] == pytest.approx(1e-3) and g.nodes()[-1] == pytest.approx(0.999)
    assert g.refined().points == 1998


def test_particle_in_a_box():
    length = 3.0
    ev = oracle.eigenvalues_fd(lambda r: np.zeros_like(r), GridSpec(0.0, length, 4000), 5)
    exact = (np.arange(1, 6) * np.pi / length) ** 2
    np.testing.assert_allclose(ev, exact, rtol=1e-4)


def test_half_oscillator():
    ev = oracle.eigenvalues_fd(lambda r: r**2, GridSpec(0.0, 20.0, 4000), 3)
    np.testing.assert_allclose(ev, [3.0, 7.0, 11.0], rtol=1e-4)


def test_second_order_convergence():
    exact = 3.0
    errs = [abs(oracle.eigenvalues_fd(lambda r: r**2, GridSpec(0.0, 12.0, m), 1)[0] - exact)
            for m in (499, 999)]
    # (points + 1) doubles, so h halves exactly
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.2)


def test_sturm_bisection_matches_scipy():
    grid = GridSpec(1e-3, 40.0, 1500)
    u = lambda r: -4.0 / np.cosh(r) ** 2 + 2.0 / r**2  # noqa: E731
    ev = oracle.eigenvalues_fd(u, grid, 6)
    r = grid.nodes()
    d = 2.0 / grid.h**2 + u(r)
    e = np.full(r.size - 1, -1.0 / grid.h**2)
    ref = eigh_tridiagonal(d, e, select="i", select_range=(0, 5), eigvals_only=True)
    np.testing.assert_allclose(ev, ref, rtol=1e-12, atol=1e-12)


def test_count_bounds():
    g = GridSpec(0.0, 1.0, 200)
    with pytest.raises(ValueError):
        oracle.eigenvalues_fd(lambda r: r, g, 0)
    with pytest.raises(ValueError):
        oracle.eigenvalues_fd(lambda r: r, g, 201)


def test_effective_problem_examples(sample_params):
    qn = QuantumNumbers(0, -1)
    exact = oracle.effective_problem(2.0, sample_params, CTX, qn, Centrifugal.EXACT)
    pek = oracle.effective_problem(2.0, sample_params, CTX, qn, Centrifugal.PEKERIS)
    r = np.linspace(0.1, 30, 200)
    np.testing.assert_array_equal(exact.u_eff(r), pek.u_eff(r))
    assert oracle.effective_problem(5.0, sample_params, CTX, qn).target == 0.0
    far = oracle.effective_problem(2.0, sample_params, CTX, QuantumNumbers(0, -3)).u_eff(400.0)
    assert far == pytest.approx((5.0 + 2.0) * 1.0, rel=1e-5)


def test_effective_problem_pseudospin(sample_params):
    ctx = PhysicalContext(5.0, 1.0, Symmetry.PSEUDOSPIN, 0.5)
    prob = oracle.effective_problem(1.0, sample_params, ctx, QuantumNumbers(0, 2))
    assert prob.target == pytest.approx(1.0 - 25.0 - 0.5 * 6.0)
    r = 3.0
    from rmdirac.model import rosen_morse
    assert prob.u_eff(r) == pytest.approx(2.0 / r**2 - (5.0 - 1.0 + 0.5) * rosen_morse(r, sample_params))


def test_bitwise_identical_matrices_without_centrifugal_term(sample_params):
    qn = QuantumNumbers(0, -1)
    grid = GridSpec(1e-4, 80.0, 300)
    a = oracle._Phi(0, sample_params, CTX, qn, Centrifugal.EXACT, None, grid)
    b = oracle._Phi(0, sample_params, CTX, qn, Centrifugal.PEKERIS, None, grid)
    np.testing.assert_array_equal(a.base, b.base)
    np.testing.assert_array_equal(a.sigma, b.sigma)


def test_reference_well_ground_state(sample_params):
    res = oracle.self_consistent_energy(0, sample_params, CTX, QuantumNumbers(0, -1), Centrifugal.PEKERIS)
    # scipy eigh_tridiagonal on 20000/40000-point grids, Richardson-extrapolated: 3.17856115
    assert res.energy == pytest.approx(3.17856115, abs=1e-7)
    assert res.richardson_error < 1e-4
    assert res.converged == (res.richardson_error < 1e-6 * 5.0)


def test_phi_monotone_between_crossings(sample_params):
    grid = oracle.default_grid(sample_params, 1.0, 1000)
    phi = oracle._Phi(0, sample_params, CTX, QuantumNumbers(0, -1), Centrifugal.EXACT, None, grid)
    es = np.linspace(2.0, 4.5, 60)
    vals = np.array([phi.value(e) for e in es])
    d = np.diff(vals)
    assert np.all(d < 0) or np.all(d > 0)
    root_signs = np.sign(vals)
    assert root_signs[0] != root_signs[-1]


def test_no_sign_change_is_not_an_exception():
    shallow = PotentialParams(0.01, 0.0, 0.5, 2.0)
    res = oracle.self_consistent_energy(0, shallow, CTX, QuantumNumbers(0, -1), window=(4.5, 4.99))
    assert math.isnan(res.energy) and not res.converged


def test_converged_flag_respects_tolerance(sample_params):
    for tol in (1e-3, 1e-9):
        res = oracle.self_consistent_energy(0, sample_params, CTX, QuantumNumbers(0, -1), tol=tol)
        assert res.converged == (res.richardson_error < tol)


@pytest.mark.slow
def test_richardson_bounds_quadruple_grid_shift(sample_params):
    hits = 0
    cases = [(n, k) for n in (0, 1) for k in (-1, -2, -3)]
    for n, kappa in cases:
        res = oracle.self_consistent_energy(n, sample_params, CTX, QuantumNumbers(n, kappa), Centrifugal.PEKERIS)
        fine = oracle._refine_on(res.grid.refined(4), n,
                                 (sample_params, CTX, QuantumNumbers(n, kappa), Centrifugal.PEKERIS, None),
                                 res.energy - 1e-3, res.energy + 1e-3, 1e-13)
        hits += abs(fine - res.energy) <= res.richardson_error
    assert hits / len(cases) >= 0.95


def test_pekeris_and_exact_modes_are_both_reported(sample_params):
    qn = QuantumNumbers(0, -2)
    a = oracle.self_consistent_energy(0, sample_params, CTX, qn, Centrifugal.EXACT)
    b = oracle.self_consistent_energy(0, sample_params, CTX, qn, Centrifugal.PEKERIS)
    assert math.isfinite(a.energy) and math.isfinite(b.energy)
    assert a.energy != b.energy


def test_nonrel_mode_on_free_box():
    res = oracle.nonrel_energy(0, 0, PotentialParams(0.0, 0.0, 1.0, 1.0), 0.5, r_max=5.0)
    assert res.energy == pytest.approx((math.pi / 5.0) ** 2, rel=1e-8)
    assert res.grid.r_min == 0.0


def test_singular_centrifugal_term_keeps_inner_wall():
    res = oracle.nonrel_energy(0, 1, PotentialParams(6.0, 0.0, 1.0, 1.0), 1.0)
    assert res.grid.r_min == pytest.approx(1e-4)


def test_nonrel_mode_against_eckart_exact_level():
    # l = 0 well -V sech^2(alpha r) on the half line: odd levels of the Poschl-Teller problem
    alpha, v, mu = 1.0, 6.0, 1.0
    lam = 0.5 * (-1 + math.sqrt(1 + 8 * mu * v / alpha**2))
    exact = -(alpha**2 / (2 * mu)) * (lam - 1) ** 2
    res = oracle.nonrel_energy(0, 0, PotentialParams(v, 0.0, alpha, 1.0), mu)
    assert res.energy == pytest.approx(exact, rel=1e-6)
