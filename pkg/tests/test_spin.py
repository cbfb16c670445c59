import numpy as np
import pytest

from photontail import DomainError, sigma_op, total_spin
from photontail.spin import PAULI, apply_spin_operator


def test_single_particle_matrices():
    assert np.array_equal(sigma_op(3, 1, 1).matrix, np.diag([1.0, -1.0]))
    assert np.array_equal(sigma_op(1, 1, 1).matrix, PAULI[0])
    assert np.array_equal(sigma_op(2, 1, 1).matrix, PAULI[1])


def test_tensor_placement():
    # basis order (uu, ud, du, dd): sigma_3 on particle 2 alternates signs
    assert np.array_equal(sigma_op(3, 2, 2).matrix, np.diag([1.0, -1.0, 1.0, -1.0]))
    assert np.array_equal(sigma_op(3, 1, 2).matrix, np.diag([1.0, 1.0, -1.0, -1.0]))


def test_involution_and_hermiticity():
    for P in (1, 2, 3):
        for m in (1, 2, 3):
            for lam in range(1, P + 1):
                S = sigma_op(m, lam, P).matrix
                assert np.abs(S @ S - np.eye(2**P)).max() <= 1e-14
                assert np.abs(S - S.conj().T).max() <= 1e-14


def test_cross_particle_commutation():
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            A = sigma_op(m, 1, 2).matrix
            B = sigma_op(n, 2, 2).matrix
            assert np.abs(A @ B - B @ A).max() <= 1e-14


def test_su2_relations():
    for P in (1, 2):
        for lam in range(1, P + 1):
            s1 = sigma_op(1, lam, P).matrix
            s2 = sigma_op(2, lam, P).matrix
            s3 = sigma_op(3, lam, P).matrix
            assert np.abs(s1 @ s2 - s2 @ s1 - 2j * s3).max() <= 1e-14


def test_index_errors():
    with pytest.raises(DomainError):
        sigma_op(0, 1, 1)
    with pytest.raises(DomainError):
        sigma_op(1, 3, 2)


def test_total_spin_product_states():
    down = np.array([0.0, 1.0], dtype=complex)
    up = np.array([1.0, 0.0], dtype=complex)
    for P in (1, 2, 3):
        spinor = np.array([1.0], dtype=complex)
        for _ in range(P):
            spinor = np.kron(spinor, down)
        U = np.kron(np.array([1.0, 0, 0], dtype=complex), spinor)  # 3 Fock states
        assert np.allclose(total_spin(U, P), [0, 0, -P], atol=1e-12)
    U = np.kron(np.array([1.0, 0, 0], dtype=complex), up)
    assert np.allclose(total_spin(U, 1), [0, 0, 1], atol=1e-12)


def test_total_spin_bound_and_phase_invariance():
    rng = np.random.default_rng(21)
    for P in (1, 2):
        for _ in range(10):
            U = rng.standard_normal(8 * 2**P) + 1j * rng.standard_normal(8 * 2**P)
            U /= np.linalg.norm(U)
            S = total_spin(U, P)
            assert np.linalg.norm(S) <= P + 1e-12
            S2 = total_spin(np.exp(0.7j) * U, P)
            assert np.allclose(S, S2, atol=1e-12)


def test_total_spin_requires_normalization():
    with pytest.raises(DomainError):
        total_spin(np.array([2.0, 0.0], dtype=complex), 1)


def test_apply_spin_operator_shape_guard():
    with pytest.raises(DomainError):
        apply_spin_operator(sigma_op(1, 1, 2), np.zeros(6, dtype=complex))
