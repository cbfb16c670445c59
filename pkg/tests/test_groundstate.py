import numpy as np
import pytest

from photontail import (DegenerateGroundStateError, ground_state,
                        number_operator)
from conftest import make_model


def test_decoupled_ground_state():
    model = make_model(n_radial=2, n_max=1, g=0.0)
    gs = ground_state(model)
    assert gs.E == pytest.approx(-1.0, abs=1e-12)
    # vacuum (x) spin-down: full-space index 1 with spin fastest
    expected = np.zeros(model.dim, dtype=complex)
    expected[1] = 1.0
    assert np.linalg.norm(gs.U - expected) <= 1e-10
    assert gs.gap == pytest.approx(min(2.0, model.grid.omega.min()), abs=1e-10)
    assert gs.residual <= 1e-10


def test_degenerate_without_external_field():
    model = make_model(n_radial=1, n_max=1, g=0.0, bext=(0.0, 0.0, 0.0))
    with pytest.raises(DegenerateGroundStateError) as err:
        ground_state(model)
    assert err.value.e1 - err.value.e0 < 1e-10


def test_quadratic_energy_shift_against_perturbation_oracle():
    """E(g) - E(0) matches second-order perturbation theory as g -> 0."""
    model0 = make_model(n_radial=2, n_max=1, g=0.0)
    H0 = model0.h_full.to_dense()
    Hint = model0.h_int.toarray()
    evals, evecs = np.linalg.eigh(H0)
    v = evecs.conj().T @ (Hint @ evecs[:, 0])
    e2 = -np.sum(np.abs(v[1:]) ** 2 / (evals[1:] - evals[0]))

    gs0 = ground_state(model0)
    shifts = []
    gvals = (0.02, 0.04, 0.08)
    for g in gvals:
        model = make_model(n_radial=2, n_max=1, g=g)
        gs = ground_state(model)
        assert gs.E <= gs0.E + 1e-12
        shifts.append(gs0.E - gs.E)
    slope = np.polyfit(np.log(gvals), np.log(shifts), 1)[0]
    assert slope >= 1.9
    assert shifts[0] / gvals[0] ** 2 == pytest.approx(-e2, rel=2e-2)


def test_variational_property(small_model_gs):
    model, gs = small_model_gs
    rng = np.random.default_rng(41)
    H = model.h_full.matrix
    for _ in range(20):
        psi = rng.standard_normal(model.dim) + 1j * rng.standard_normal(model.dim)
        psi /= np.linalg.norm(psi)
        assert np.vdot(psi, H @ psi).real >= gs.E - 1e-10


def test_number_moments(small_model_gs):
    model, gs = small_model_gs
    N = number_operator(model.basis)
    n1 = np.vdot(gs.U, N.apply(gs.U)).real
    n2 = np.vdot(N.apply(gs.U), N.apply(gs.U)).real
    assert np.isfinite(n1) and np.isfinite(n2)
    assert 0.0 <= n1 <= n2 + 1e-15


def test_phase_convention_and_reproducibility():
    runs = []
    for _ in range(2):
        model = make_model(n_radial=2, n_max=1, g=0.12)
        runs.append(ground_state(model, seed=3))
    assert np.abs(runs[0].U - runs[1].U).max() <= 1e-12
    pivot = runs[0].U[np.argmax(np.abs(runs[0].U))]
    assert abs(pivot.imag) <= 1e-14
    assert pivot.real > 0
    assert abs(np.linalg.norm(runs[0].U) - 1.0) <= 1e-12


def test_sparse_path_matches_dense():
    model = make_model(n_radial=2, n_max=1, g=0.1)
    dense = ground_state(model, dense_threshold=2000)
    sparse = ground_state(model, dense_threshold=10, seed=5)
    assert sparse.E == pytest.approx(dense.E, abs=1e-10)
    overlap = abs(np.vdot(dense.U, sparse.U))
    assert overlap == pytest.approx(1.0, abs=1e-9)
