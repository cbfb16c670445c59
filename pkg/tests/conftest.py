import numpy as np
import pytest

from photontail import (CutoffFunction, ModelConfig, SpectralSurrogate,
                        assemble, build_mode_grid, decay_report, ground_state,
                        surrogate_from_model)


def make_model(n_radial=3, angular=6, k_max=6.0, n_max=1, g=0.1,
               bext=(0.0, 0.0, 1.0), positions=None, chi=None, frame="default"):
    if positions is None:
        positions = np.zeros((1, 3))
    if chi is None:
        chi = CutoffFunction()
    cfg = ModelConfig(
        g=g, bext=np.asarray(bext, dtype=float), positions=positions, chi=chi,
        grid=build_mode_grid(n_radial, angular, k_max, frame=frame),
        n_max=n_max,
    )
    return assemble(cfg)


@pytest.fixture(scope="session")
def small_model_gs():
    """74-dimensional interacting model: 18 momentum nodes, n_max = 1."""
    model = make_model()
    return model, ground_state(model)


@pytest.fixture(scope="session")
def small_surrogate(small_model_gs):
    model, gs = small_model_gs
    return surrogate_from_model(model, gs)


@pytest.fixture(scope="session")
def default_model_gs():
    """Desk-scale default: 36 momentum nodes, n_max = 2, dim = 5402."""
    model = make_model(n_radial=6, angular=6, k_max=6.0, n_max=2, g=0.1)
    return model, ground_state(model, seed=1234)


@pytest.fixture(scope="session")
def default_surrogate(default_model_gs):
    model, gs = default_model_gs
    return surrogate_from_model(model, gs)


@pytest.fixture(scope="session")
def fixture50():
    """Seeded random 50-dim Hermitian surrogate for spectral-filter checks."""
    rng = np.random.default_rng(2024)
    A = rng.standard_normal((50, 50)) + 1j * rng.standard_normal((50, 50))
    H = (A + A.conj().T) / 2.0
    evals, evecs = np.linalg.eigh(H)
    U = evecs[:, 0].astype(complex)
    f = np.stack([evecs[:, 1], evecs[:, 2], evecs[:, 3]]).astype(complex)
    return SpectralSurrogate(
        H=H, E=float(evals[0]), U=U, f=f[None, :, :], g=1.0,
        chi=CutoffFunction(), positions=np.zeros((1, 3)),
    ), float(evals[1] - evals[0])


@pytest.fixture(scope="session")
def session_report(small_surrogate):
    """One full decay study shared by the asymptotic-law tests."""
    return decay_report(small_surrogate, radii=np.logspace(0, 4, 17), seed=7)
