import numpy as np
import pytest

from photontail import (ConfigurationError, CutoffFunction, ModelConfig,
                        build_mode_grid, assemble, number_operator)
from conftest import make_model


def test_assembly_parts_and_linearity():
    model = make_model(n_radial=2, n_max=1, g=0.07)
    H0 = model.hamiltonian_at(0.0).matrix
    H1 = model.hamiltonian_at(0.07).matrix
    H2 = model.hamiltonian_at(0.14).matrix
    diff = (H2 - H0) - 2 * (H1 - H0)
    assert np.abs(diff.toarray()).max() <= 1e-14
    assert np.abs((H1 - model.h_full.matrix).toarray()).max() == 0.0


def test_hermiticity_random_configs():
    rng = np.random.default_rng(31)
    for _ in range(3):
        model = make_model(
            n_radial=2, n_max=1,
            g=float(rng.uniform(0.01, 0.3)),
            bext=rng.standard_normal(3),
            positions=rng.standard_normal((2, 3)) * 0.5,
            chi=CutoffFunction("exponential", 1.3, 0.8),
        )
        assert model.h_full.hermiticity_defect() <= 1e-12


def test_decoupled_spectrum_single_spin():
    model = make_model(n_radial=2, n_max=1, g=0.0)
    evals = np.linalg.eigvalsh(model.h_full.to_dense())
    assert evals[0] == pytest.approx(-1.0, abs=1e-12)
    omega_min = model.grid.omega.min()
    gap_expected = min(2.0, omega_min)
    assert evals[1] - evals[0] == pytest.approx(gap_expected, abs=1e-10)


def test_decoupled_ground_energy_general_field():
    bext = np.array([0.3, -0.4, 1.2])
    for P in (1, 2):
        model = make_model(n_radial=1, n_max=1, g=0.0, bext=bext,
                           positions=np.zeros((P, 3)))
        evals = np.linalg.eigvalsh(model.h_full.to_dense())
        assert evals[0] == pytest.approx(-P * np.linalg.norm(bext), abs=1e-12)


def test_free_hamiltonian_preserves_photon_sectors():
    model = make_model(n_radial=2, n_max=2, g=0.0)
    N = number_operator(model.basis)
    Nfull = np.kron(N.to_dense(), np.eye(model.n_spin))
    H0 = model.h_full.to_dense()
    assert np.abs(H0 @ Nfull - Nfull @ H0).max() <= 1e-12


def test_polarization_gauge_invariance():
    """A different frame tie-break conjugates H by a unitary: same spectrum."""
    spectra = []
    for frame in ("default", "alt"):
        cfg = ModelConfig(
            g=0.15, bext=np.array([0.2, 0.1, 0.9]),
            positions=np.array([[0.3, -0.2, 0.4]]),
            chi=CutoffFunction(),
            grid=build_mode_grid(2, 6, 6.0, frame=frame),
            n_max=1,
        )
        spectra.append(np.linalg.eigvalsh(assemble(cfg).h_full.to_dense()))
    assert np.abs(spectra[0] - spectra[1]).max() <= 1e-9


def test_config_validation():
    grid = build_mode_grid(2, 6, 6.0)
    with pytest.raises(ConfigurationError):
        ModelConfig(g=-0.1, bext=[0, 0, 1], positions=np.zeros((1, 3)),
                    chi=CutoffFunction(), grid=grid, n_max=1)
    with pytest.raises(ConfigurationError):
        ModelConfig(g=0.1, bext=[0, 0, 0], positions=np.zeros((1, 3)),
                    chi=CutoffFunction(), grid=grid, n_max=1,
                    require_unique=True)


def test_dimension_overflow_guard():
    grid = build_mode_grid(6, 26, 6.0)  # 156 modes, 312 slots
    cfg = ModelConfig(g=0.1, bext=[0, 0, 1], positions=np.zeros((1, 3)),
                      chi=CutoffFunction(), grid=grid, n_max=3)
    with pytest.raises(ConfigurationError):
        assemble(cfg)
