import numpy as np
import pytest
from scipy.integrate import quad

from photontail import (ConfigurationError, CutoffFunction, DomainError,
                        build_mode_grid, embed_field, field_coefficient,
                        transverse_project)
from photontail.modes import gauss_product_sphere, sphere_rule

BALL = lambda kmax: 4.0 * np.pi / 3.0 * kmax**3


def test_single_shell_grid():
    grid = build_mode_grid(1, 6, 1.0)
    assert grid.n_modes == 6
    assert np.allclose(grid.omega, grid.omega[0])
    # one-point radial rule integrates rho^2 with the documented 3/4 ratio
    assert grid.weight.sum() == pytest.approx(0.75 * BALL(1.0), rel=1e-12)


@pytest.mark.parametrize("n_radial", [2, 4, 6])
@pytest.mark.parametrize("order", [6, 14, 26])
def test_ball_volume_exact_for_quadratic_jacobian(n_radial, order):
    grid = build_mode_grid(n_radial, order, 6.0)
    assert grid.weight.sum() == pytest.approx(BALL(6.0), rel=1e-12)


def test_sphere_rules_normalized_and_unit():
    for order in (6, 14, 26):
        dirs, wts = sphere_rule(order)
        assert len(dirs) == order
        assert wts.sum() == pytest.approx(4 * np.pi, rel=1e-14)
        assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-14)
    with pytest.raises(ConfigurationError):
        sphere_rule(13)


def test_grid_config_errors():
    with pytest.raises(ConfigurationError):
        build_mode_grid(3, 6, 0.0)
    with pytest.raises(ConfigurationError):
        build_mode_grid(0, 6, 1.0)
    with pytest.raises(ConfigurationError):
        build_mode_grid(3, 7, 1.0)


def test_polarization_frame_invariants():
    grid = build_mode_grid(4, 26, 6.0)
    for j in range(grid.n_modes):
        k = grid.k[j]
        e1, e2 = grid.pol[j]
        khat = k / np.linalg.norm(k)
        assert abs(np.dot(e1, e2)) <= 1e-12
        assert abs(np.linalg.norm(e1) - 1) <= 1e-12
        assert abs(np.linalg.norm(e2) - 1) <= 1e-12
        assert abs(np.dot(e1, khat)) <= 1e-12
        assert abs(np.dot(e2, khat)) <= 1e-12
        completeness = np.outer(e1, e1) + np.outer(e2, e2) + np.outer(khat, khat)
        assert np.abs(completeness - np.eye(3)).max() <= 1e-12


def test_transverse_project_values():
    out = transverse_project([0, 0, 1], [1, 0, 1])
    assert np.allclose(out, [1, 0, 0])
    # transverse input is untouched
    f = np.array([0.3, -0.2, 0.0])
    assert np.allclose(transverse_project([0, 0, 2.0], f), f)
    k = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
    assert np.allclose(transverse_project(k, [1.0, 0, 0]), [0.5, -0.5, 0.0])
    with pytest.raises(DomainError):
        transverse_project([0, 0, 0], [1, 0, 0])


def test_transverse_project_idempotent_selfadjoint():
    rng = np.random.default_rng(5)
    for _ in range(20):
        k = rng.standard_normal(3)
        P = np.column_stack([transverse_project(k, e) for e in np.eye(3)])
        assert np.abs(P @ P - P).max() <= 1e-12
        assert np.abs(P - P.T).max() <= 1e-13
        assert np.linalg.norm(P @ k) <= 1e-12 * np.linalg.norm(k)


def test_field_coefficient_hand_value():
    chi = CutoffFunction("gaussian", 1.0, 1.0)
    B = field_coefficient(1, np.zeros(3), np.array([0, 0, 1.0]), chi)
    expected = 1j * np.exp(-1.0) / (2 * np.pi) ** 1.5 * np.array([0, 1.0, 0])
    assert np.abs(B - expected).max() <= 1e-15
    assert B[1] == pytest.approx(0.023358j, rel=1e-4)
    # k x e_3 = 0 along e_3
    B3 = field_coefficient(3, np.zeros(3), np.array([0, 0, 1.0]), chi)
    assert np.abs(B3).max() == 0.0


def test_field_coefficient_transversality_and_domain():
    chi = CutoffFunction()
    rng = np.random.default_rng(6)
    for _ in range(30):
        k = rng.standard_normal(3)
        x = rng.standard_normal(3)
        m = int(rng.integers(1, 4))
        B = field_coefficient(m, x, k, chi)
        nb = np.linalg.norm(B)
        if nb > 0:
            assert abs(np.dot(k, B)) <= 1e-14 * np.linalg.norm(k) * nb
    with pytest.raises(DomainError):
        field_coefficient(1, np.zeros(3), np.zeros(3), chi)
    with pytest.raises(DomainError):
        field_coefficient(4, np.zeros(3), np.array([1.0, 0, 0]), chi)


def test_embed_field_norm_against_radial_oracle():
    """Discrete norm^2 -> (2 pi)^-3 (8 pi / 3) int chi^2 rho^3 over the ball."""
    chi = CutoffFunction("gaussian", 1.0, 1.0)
    radial, _ = quad(lambda r: chi(r) ** 2 * r**3, 0.0, 6.0)
    exact = radial * (8 * np.pi / 3) / (2 * np.pi) ** 3
    errs = []
    for n_radial in (4, 8, 16, 32):
        grid = build_mode_grid(n_radial, 6, 6.0)
        c = embed_field(1, np.zeros(3), grid, chi)
        errs.append(abs(np.vdot(c, c).real - exact))
    assert errs[0] > errs[1] > errs[2] > errs[3]
    assert errs[3] <= 1e-12 * exact


def test_embed_field_linearity_and_phases():
    grid = build_mode_grid(3, 6, 6.0)
    x = np.array([0.4, -1.1, 0.7])
    c0 = embed_field(2, x, grid, CutoffFunction("gaussian", 0.0, 1.0))
    assert np.abs(c0).max() == 0.0
    c1 = embed_field(2, x, grid, CutoffFunction("gaussian", 1.0, 1.0))
    c3 = embed_field(2, x, grid, CutoffFunction("gaussian", 3.0, 1.0))
    assert np.abs(c3 - 3 * c1).max() <= 1e-15
    # displacement changes phases only
    c_origin = embed_field(2, np.zeros(3), grid, CutoffFunction())
    assert np.abs(np.abs(c1) - np.abs(c_origin)).max() <= 1e-15


def test_embed_field_conjugate_covariance():
    # B_{m,-x}(k) = -conj(B_{m,x}(k)); the k-dependent frame is real, so the
    # slot coefficients inherit the same signed conjugation.
    grid = build_mode_grid(3, 14, 6.0)
    x = np.array([0.8, 0.1, -0.5])
    cp = embed_field(1, x, grid, CutoffFunction())
    cm = embed_field(1, -x, grid, CutoffFunction())
    assert np.abs(cm + np.conj(cp)).max() <= 1e-15
    assert np.abs(np.abs(cm) - np.abs(cp)).max() <= 1e-15


def test_cutoff_function_families():
    g = CutoffFunction("gaussian", 2.0, 1.5)
    e = CutoffFunction("exponential", 0.5, 2.0)
    assert g.at_zero == 2.0 and e.at_zero == 0.5
    assert g(1.5) == pytest.approx(2.0 * np.exp(-1.0))
    assert e(2.0) == pytest.approx(0.5 * np.exp(-1.0))
    with pytest.raises(ConfigurationError):
        CutoffFunction("lorentzian", 1.0, 1.0)
    with pytest.raises(ConfigurationError):
        CutoffFunction("gaussian", 1.0, 0.0)


def test_product_sphere_rule_degree():
    dirs, wts = gauss_product_sphere(8)
    assert wts.sum() == pytest.approx(4 * np.pi, rel=1e-13)
    # integrates x^2 y^2 z^2 exactly: 4 pi / 105
    val = np.sum(wts * dirs[:, 0] ** 2 * dirs[:, 1] ** 2 * dirs[:, 2] ** 2)
    assert val == pytest.approx(4 * np.pi / 105, rel=1e-12)
