"""Spin space of P fixed particles: (C^2)^(x P) with embedded Pauli operators.

Tensor order is fixed package-wide: particle 1 is the slowest-varying index
of the 2^P spin space, and in the full state space the Fock index is slower
than the whole spin index.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class SpinOperator:
    """Hermitian operator on the 2^P spin space."""

    P: int
    matrix: np.ndarray

    @property
    def dim(self):
        return 2**self.P


def sigma_op(m, lam, P):
    """Pauli matrix sigma_m acting on particle lam of P:  I x..x sigma_m x..x I."""
    if not 1 <= m <= 3:
        raise DomainError(f"Pauli index must be 1..3, got {m}")
    if not 1 <= lam <= P:
        raise DomainError(f"particle index must be 1..{P}, got {lam}")
    if P < 1:
        raise DomainError("particle count must be >= 1")
    mat = np.kron(
        np.eye(2 ** (lam - 1)),
        np.kron(PAULI[m - 1], np.eye(2 ** (P - lam))),
    ).astype(complex)
    return SpinOperator(P=P, matrix=mat)


def apply_spin_operator(op, psi):
    """Apply I_Fock (x) op to a vector on Fock (x) spin (spin index fastest)."""
    psi = np.asarray(psi, dtype=complex)
    nf, rem = divmod(psi.shape[0], op.dim)
    if rem != 0:
        raise DomainError(
            f"vector length {psi.shape[0]} is not a multiple of 2^P = {op.dim}"
        )
    return (psi.reshape(nf, op.dim) @ op.matrix.T).reshape(-1)


def total_spin(U, P):
    """Total-spin vector S with S_j = sum_lam < (I x sigma_j^[lam]) U, U >.

    U must be normalized (tolerance 1e-9); imaginary parts of the
    expectations, which are pure rounding for Hermitian factors, are
    discarded.
    """
    U = np.asarray(U, dtype=complex)
    nrm = np.linalg.norm(U)
    if abs(nrm - 1.0) > 1e-9:
        raise DomainError(f"total_spin requires a normalized state, got |U| = {nrm}")
    S = np.zeros(3)
    for m in range(1, 4):
        for lam in range(1, P + 1):
            val = np.vdot(U, apply_spin_operator(sigma_op(m, lam, P), U))
            S[m - 1] += val.real
    return S
