import math

import numpy as np
import pytest

from sphdes.catalog import default_product_spec, platonic, product_design
from sphdes.errors import DomainError, SingularMatrixError
from sphdes.harmonics import basis_size, basis_vector
from sphdes.optimality import (
    CoefficientVector,
    InformationMatrix,
    check_result,
    criteria,
    fit,
    information_matrix,
    simulate,
)
from sphdes.sphere import Design, from_vector, random_design


def brute_force_matrix(design, d):
    k = basis_size(d)
    M = np.zeros((k, k))
    for p in design.points:
        f = basis_vector(d, p)
        M += np.outer(f, f)
    return M / design.n


def test_information_matrix_matches_brute_force():
    d = random_design(17, 4)
    np.testing.assert_allclose(information_matrix(d, 3).entries, brute_force_matrix(d, 3), atol=1e-13)


@pytest.mark.parametrize("name, d", [("tetrahedron", 1), ("icosahedron", 2)])
def test_identity_for_designs(name, d):
    M = information_matrix(platonic(name), d)
    assert M.identity_deviation() < 1e-12


def test_repeated_point_rank_one():
    p = from_vector((0.3, -0.2, 0.9))
    d = Design([p] * 5)
    M = information_matrix(d, 1).entries
    f = basis_vector(1, p)
    np.testing.assert_allclose(M, np.outer(f, f), atol=1e-14)
    assert np.linalg.matrix_rank(M) == 1


def test_matrix_invariants():
    M = information_matrix(random_design(9, 1), 2).entries
    assert np.max(np.abs(M - M.T)) <= 1e-14
    assert np.linalg.eigvalsh(M).min() >= -1e-10


def test_criteria_identity():
    for k in (1, 4, 9):
        rep = criteria(np.eye(k), [0.5, 1, 2, 10])
        assert rep.D == rep.A == rep.E == 1.0
        assert all(v == pytest.approx(1.0, abs=1e-15) for v in rep.phi.values())
        assert rep.identity_deviation == 0.0 and not rep.singular


def test_criteria_hand_example():
    rep = criteria(np.diag([2.0, 0.5]), [1.0])
    assert rep.phi[1.0] == pytest.approx(0.8, rel=1e-15)
    assert rep.A == pytest.approx(0.8, rel=1e-15)
    assert rep.D == pytest.approx(1.0, rel=1e-15)
    assert rep.E == 0.5


def test_criteria_singular():
    M = information_matrix(Design([from_vector((0, 0, 1))] * 3), 1)
    rep = criteria(M, [1.0])
    assert rep.singular and rep.E == 0.0 and rep.D == 0.0 and rep.A == 0.0


def test_criteria_rejects_bad_p():
    with pytest.raises(DomainError):
        criteria(np.eye(4), [0.0])


def test_e_criterion_monotone(rng):
    lam = rng.uniform(0.5, 2.0, size=9)
    base = criteria(np.diag(lam)).E
    for i in range(9):
        up = lam.copy()
        up[i] *= 1.7
        assert criteria(np.diag(up)).E >= base


def test_phi_p_tends_to_e():
    # |log(Phi_p / lam_min)| <= log(k / multiplicity) / p; the two-eigenvalue case is within 1e-6
    rep = criteria(np.diag([2.0, 0.5]), [1e6])
    assert rep.phi[1e6] == pytest.approx(0.5, rel=1e-6)
    lam = np.array([1.3, 0.8, 1.1, 0.95])
    rep = criteria(np.diag(lam), [1e6])
    bound = math.log(4) / 1e6
    assert abs(math.log(rep.phi[1e6] / 0.8)) <= bound * (1 + 1e-6)


def test_check_result_examples():
    ok, dev = check_result(product_design(default_product_spec(3)), 3)
    assert ok and dev < 1e-10
    ok, dev = check_result(platonic("octahedron"), 2)
    assert not ok
    ok, dev = check_result(random_design(5, 0), 0)
    assert ok and dev == 0.0


def test_fit_constant():
    d = random_design(30, 2)
    c = fit(d, np.ones(30), 2).c
    np.testing.assert_allclose(c, np.eye(9)[0], atol=1e-12)


def test_exact_recovery_on_product_design(rng):
    design = product_design(default_product_spec(3))
    c = CoefficientVector(3, rng.standard_normal(16))
    y = simulate(design, c, noise_sd=0.0)
    np.testing.assert_allclose(fit(design, y, 3).c, c.c, atol=1e-10)


def test_fit_general_design_uses_solve(rng):
    design = random_design(60, 5)
    c = CoefficientVector(2, rng.standard_normal(9))
    y = simulate(design, c, noise_sd=0.0)
    np.testing.assert_allclose(fit(design, y, 2).c, c.c, atol=1e-10)


def test_fit_noise_covariance():
    design = platonic("icosahedron")
    c = CoefficientVector(2, np.linspace(-1, 1, 9))
    est = np.array([fit(design, simulate(design, c, 0.1, seed=s), 2).c for s in range(4000)])
    np.testing.assert_allclose(est.mean(axis=0), c.c, atol=4 * 0.1 / math.sqrt(12 * 4000))
    var = est.var(axis=0)
    # covariance 0.01/n * I; sample variance of 4000 draws has ~2.2% relative sd
    np.testing.assert_allclose(var, 0.01 / 12, rtol=0.12)


def test_fit_singular():
    d = Design([from_vector((0, 0, 1))] * 4)
    with pytest.raises(SingularMatrixError, match="d=1.*n=4"):
        fit(d, np.zeros(4), 1)


def test_fit_length_mismatch():
    with pytest.raises(DomainError):
        fit(platonic("cube"), np.zeros(3), 1)


def test_simulate_properties():
    design = random_design(10_000, 8)
    c = CoefficientVector(1, np.zeros(4))
    y = simulate(design, c, 1.0, seed=3)
    assert abs(y.mean()) < 0.05
    np.testing.assert_array_equal(y, simulate(design, c, 1.0, seed=3))
    c2 = CoefficientVector(1, [1.0, 0.5, -0.2, 0.3])
    np.testing.assert_allclose(
        simulate(design, c2, 0.0),
        [basis_vector(1, p) @ c2.c for p in design.points[:10]] + list(simulate(design, c2, 0.0)[10:]),
    )
    with pytest.raises(DomainError):
        simulate(design, c, -1.0)


def test_coefficient_vector_length():
    with pytest.raises(DomainError):
        CoefficientVector(2, np.zeros(4))


def test_information_matrix_type_checks():
    with pytest.raises(DomainError):
        InformationMatrix(1, np.eye(3))
