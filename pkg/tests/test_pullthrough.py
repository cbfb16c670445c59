import dataclasses

import numpy as np
import pytest

from photontail import (ConfigurationError, DomainError, amplitude_bound,
                        ground_state, number_check, photon_amplitude,
                        pullthrough_residual, surrogate_from_model)
from conftest import make_model


def sample_k(rng, k_hi=7.2, k_lo=0.05):
    k = rng.standard_normal(3)
    return k * (rng.uniform(k_lo, k_hi) / np.linalg.norm(k))


def test_zero_coupling_amplitude_vanishes():
    model = make_model(n_radial=2, n_max=1, g=0.0)
    s = surrogate_from_model(model, ground_state(model))
    amp = photon_amplitude(s, np.array([0.3, -1.0, 0.6]))
    assert amp.norm() == 0.0


def test_amplitude_domain_error(small_surrogate):
    with pytest.raises(DomainError):
        photon_amplitude(small_surrogate, np.zeros(3))


def test_amplitude_bound_sampled(small_surrogate):
    rng = np.random.default_rng(61)
    for _ in range(60):
        k = sample_k(rng)
        amp = photon_amplitude(small_surrogate, k)
        assert amp.norm() <= amplitude_bound(small_surrogate, k) * (1 + 1e-12)


def test_amplitude_transversality(small_surrogate):
    rng = np.random.default_rng(62)
    for _ in range(20):
        k = sample_k(rng)
        amp = photon_amplitude(small_surrogate, k)
        if amp.norm() > 0:
            proj = np.linalg.norm(amp.dot_direction(k))
            assert proj <= 1e-12 * np.linalg.norm(k) * amp.norm()


def test_amplitude_phase_covariance(small_surrogate):
    s = small_surrogate
    theta = 0.9
    phased = dataclasses.replace(
        s, U=np.exp(1j * theta) * s.U, f=np.exp(1j * theta) * s.f,
    )
    k = np.array([0.4, 0.2, -1.3])
    a0 = photon_amplitude(s, k)
    a1 = photon_amplitude(phased, k)
    assert np.abs(a1.components - np.exp(1j * theta) * a0.components).max() <= 1e-12


def test_amplitude_first_order_perturbation():
    """Against the g=0 resolvent oracle: O(g) agreement, improving as g drops."""
    model0 = make_model(n_radial=2, n_max=1, g=0.0)
    gs0 = ground_state(model0)
    rng = np.random.default_rng(63)
    ks = [sample_k(rng) for _ in range(5)]
    rel = {}
    for g in (0.04, 0.02):
        model = make_model(n_radial=2, n_max=1, g=g)
        s = surrogate_from_model(model, ground_state(model))
        oracle = dataclasses.replace(
            surrogate_from_model(model0, gs0), g=g,
        )
        worst = 0.0
        for k in ks:
            a = photon_amplitude(s, k)
            a1 = photon_amplitude(oracle, k)
            worst = max(worst, (a - a1).norm() / a.norm())
        rel[g] = worst
    assert rel[0.02] <= 0.1
    assert rel[0.02] < rel[0.04]


def test_pullthrough_residual_zero_at_zero_coupling():
    model = make_model(n_radial=2, n_max=1, g=0.0)
    s = surrogate_from_model(model, ground_state(model))
    assert pullthrough_residual(s, 0) == 0.0


def test_pullthrough_residual_decreases_with_truncation():
    resids = []
    for n_max in (1, 2, 3):
        model = make_model(n_radial=2, n_max=n_max, g=0.05)
        s = surrogate_from_model(model, ground_state(model, seed=2))
        resids.append(max(pullthrough_residual(s, j)
                          for j in range(model.grid.n_slots)))
    assert resids[0] > resids[1] > resids[2]


def test_pullthrough_residual_triangle_cap(small_surrogate):
    from photontail.fock import ladder

    s = small_surrogate
    model = s.model
    for j in (0, 5, 11):
        omega_j = model.grid.slot_omega[j]
        aU = np.linalg.norm(ladder(model.basis, j, "annihilate", s.U))
        discrete_bound = s.g / np.sqrt(2.0) * sum(
            abs(model.coupling_vectors[lam, m, j])
            for lam in range(s.n_particles) for m in range(3)
        ) / omega_j
        res = pullthrough_residual(s, j)
        assert res <= aU + discrete_bound + 1e-12
        assert res <= 2 * aU + discrete_bound + 1e-12


def test_number_check_vacuum_and_interacting(small_surrogate):
    model0 = make_model(n_radial=2, n_max=1, g=0.0)
    s0 = surrogate_from_model(model0, ground_state(model0))
    lhs, rhs = number_check(s0)
    assert lhs == 0.0 and rhs == 0.0

    lhs, rhs = number_check(small_surrogate)
    assert rhs > 0
    assert abs(lhs - rhs) <= 1e-12 * (1 + rhs)


def test_synthetic_surrogate_rejects_model_only_ops(fixture50):
    s, _gap = fixture50
    with pytest.raises(ConfigurationError):
        pullthrough_residual(s, 0)
    with pytest.raises(ConfigurationError):
        number_check(s)


def test_radius_cache_hit(small_surrogate):
    s = small_surrogate
    k = np.array([0.0, 0.8, 0.6])
    a0 = photon_amplitude(s, k)
    # same radius, different direction: cache reused, values differ
    a1 = photon_amplitude(s, np.array([1.0, 0.0, 0.0]))
    a2 = photon_amplitude(s, k)
    assert np.abs(a0.components - a2.components).max() == 0.0
    assert (a0 - a1).norm() > 0
