"""Polynomial evaluation, Wirtinger gradients and Gauss-Newton projection."""
import numpy as np
import numpy.testing as npt
import pytest

from cacms_lab import (
    HoloPolynomial,
    NonConvergence,
    SingularPoint,
    ambient_gradient_pair,
    apply_J,
    complex_coords,
    make_structure,
    project_to_surface,
    random_tangent,
    unit_normal,
)


def _random_cubic(rng):
    terms = {}
    for _ in range(8):
        e = tuple(int(x) for x in rng.integers(0, 2, size=4))
        if 0 < sum(e) <= 3:
            terms[e] = complex(rng.normal(), rng.normal())
    terms[(1, 1, 1, 0)] = complex(rng.normal(), rng.normal())
    terms[(2, 0, 1, 0)] = complex(rng.normal(), rng.normal())
    return HoloPolynomial(4, terms)


# ---- polynomial table -------------------------------------------------


def test_terms_cleaned_and_merged():
    p = HoloPolynomial(2, {(1, 0): 2.0, (0, 0): 0.0, (0, 1): 1.0})
    assert (0, 0) not in p.terms
    assert p.degree == 1
    # duplicate keys cannot appear in a dict literal, but zero terms may
    q = HoloPolynomial(2, {(3, 0): 1.0, (0, 2): 0.0 + 0.0j, (1, 1): -2.0})
    assert set(q.terms) == {(3, 0), (1, 1)}
    assert q.degree == 3


@pytest.mark.parametrize(
    "terms",
    [
        {},
        {(0, 0): 1.0},                 # constant
        {(1, 0, 0): 1.0},              # wrong exponent count
        {(-1, 2): 1.0},                # negative exponent
        {(1, 0): 0.0},                 # nothing survives cleaning
    ],
)
def test_invalid_polynomials_rejected(terms):
    with pytest.raises(ValueError):
        HoloPolynomial(2, terms)


def test_eval_monomial_by_hand():
    p = HoloPolynomial(2, {(2, 1): 3.0, (0, 0): -1.0})
    z = np.array([1.0 + 1.0j, 2.0])
    # 3 (1+i)^2 * 2 - 1 = 3 * 2i * 2 - 1 = -1 + 12i
    assert p.eval(z) == pytest.approx(-1.0 + 12.0j)


def test_wirtinger_against_central_difference():
    """Term-by-term derivative vs complex central differences on cubics."""
    rng = np.random.default_rng(7)
    delta = 1e-5
    worst = 0.0
    for _ in range(10):
        p = _random_cubic(rng)
        z = (rng.normal(size=4) + 1j * rng.normal(size=4)) * 0.4
        w = p.wirtinger_gradient(z)
        for k in range(4):
            e = np.zeros(4, dtype=complex)
            e[k] = delta
            fd = (p.eval(z + e) - p.eval(z - e)) / (2.0 * delta)
            worst = max(worst, abs(fd - w[k]))
    assert worst <= 1e-8


# ---- ambient gradients ------------------------------------------------


def test_gradient_pair_interleaving_by_hand():
    # f = z1^2 at z1 = 1 + 2i: w = 2 + 4i, so grad Re f = (2, -4, 0, 0)
    Q = make_structure(1)
    p = HoloPolynomial(2, {(2, 0): 1.0})
    x = np.array([1.0, 2.0, 0.5, -0.3])
    grad_re, grad_im, val = ambient_gradient_pair(Q, p, x)
    npt.assert_array_equal(grad_re, [2.0, -4.0, 0.0, 0.0])
    npt.assert_array_equal(grad_im, [4.0, 2.0, 0.0, 0.0])
    assert val == pytest.approx((1 + 2j) ** 2)


def test_gradient_pair_cauchy_riemann(Q2):
    """grad Im f = J1 grad Re f with equal norms, for random cubics."""
    rng = np.random.default_rng(8)
    for _ in range(5):
        p = _random_cubic(rng)
        x = rng.standard_normal(8)
        grad_re, grad_im, _ = ambient_gradient_pair(Q2, p, x)
        npt.assert_array_equal(grad_im, apply_J(Q2, 1, grad_re))
        npt.assert_allclose(
            np.linalg.norm(grad_im), np.linalg.norm(grad_re), rtol=1e-15
        )


def test_unit_normal_hyperplane_is_first_axis(Q2, hyperplane):
    xi, j1xi = unit_normal(Q2, hyperplane, np.array([0.3, 1.0, -2.0, 0.5, 0.1, 0.2, 0.3, 0.4]))
    npt.assert_array_equal(xi, np.eye(8)[0])
    npt.assert_array_equal(j1xi, np.eye(8)[1])


def test_unit_normal_singular_at_cone_tip(Q2):
    cone = HoloPolynomial(4, {(2, 0, 0, 0): 1.0, (0, 2, 0, 0): 1.0})
    with pytest.raises(SingularPoint):
        unit_normal(Q2, cone, np.zeros(8))


# ---- projection -------------------------------------------------------


def test_hyperplane_projection_single_exact_step(Q2, hyperplane):
    seed = np.array([0.7, -0.4, 0.9, 0.1, 0.3, -0.2, 0.5, 0.6])
    sp = project_to_surface(Q2, hyperplane, seed)
    assert sp.f_residual == 0.0
    npt.assert_array_equal(sp.p[:2], [0.0, 0.0])
    npt.assert_array_equal(sp.p[2:], seed[2:])


def test_quadric_projection_residual_and_idempotence(Q2, quadric, quadric_points):
    for sp in quadric_points:
        assert sp.f_residual <= 1e-12
        again = project_to_surface(Q2, quadric, sp.p)
        assert np.array_equal(again.p, sp.p)  # already converged, no step taken


def test_projector_properties(Q2, quadric_points):
    for sp in quadric_points:
        P = sp.projector
        npt.assert_allclose(P @ P, P, atol=1e-14)
        npt.assert_allclose(P, P.T, atol=1e-15)
        assert np.trace(P) == pytest.approx(6.0, abs=1e-12)
        npt.assert_allclose(P @ sp.xi, 0.0, atol=1e-15)
        npt.assert_allclose(P @ sp.j1xi, 0.0, atol=1e-15)
        # the tangent space is invariant under the first block
        npt.assert_allclose(Q2.J1 @ P, P @ Q2.J1, atol=1e-14)


def test_projection_nonconvergence_reports_budget(Q2, quadric):
    far = np.zeros(8)
    far[0] = 50.0
    with pytest.raises(NonConvergence, match="Gauss-Newton"):
        project_to_surface(Q2, quadric, far, max_iter=3)


def test_projection_singular_seed(Q2):
    cone = HoloPolynomial(4, {(2, 0, 0, 0): 1.0, (0, 2, 0, 0): 1.0})
    with pytest.raises(SingularPoint):
        project_to_surface(Q2, cone, np.zeros(8))


def test_projection_seed_shape_validated(Q2, quadric):
    with pytest.raises(ValueError):
        project_to_surface(Q2, quadric, np.zeros(7))


def test_random_tangent_unit_and_tangential(Q2, quadric_points):
    rng = np.random.default_rng(5)
    sp = quadric_points[0]
    for _ in range(10):
        X = random_tangent(sp, rng)
        assert np.linalg.norm(X) == pytest.approx(1.0, abs=1e-12)
        npt.assert_allclose(sp.projector @ X, X, atol=1e-14)
        assert abs(X @ sp.xi) <= 1e-14
        assert abs(X @ sp.j1xi) <= 1e-14
