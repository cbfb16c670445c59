"""Truncated symmetric Fock space over the discretized one-photon space.

States are occupation vectors n = (n_1, ..., n_S) over S = 2M slots with
total occupation at most n_max, enumerated grade by grade (vacuum first,
then one-photon states, ...) in a deterministic order.  Ladder operators
follow the sqrt(n) convention; creation out of the top grade is dropped,
which is the projector-sandwiched truncation P A P and keeps every
assembled operator Hermitian.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np
import scipy.sparse as sp

from .errors import ConfigurationError

#: Basis sizes above this raise instead of enumerating.
MAX_BASIS_STATES = 2_000_000

#: Dimension below which eigensolves and resolvents use dense paths.
DENSE_THRESHOLD = 2000


def basis_dimension(n_slots, n_max):
    """Number of occupation states with total <= n_max over n_slots slots."""
    return sum(math.comb(n_slots + t - 1, t) for t in range(n_max + 1))


@dataclass
class FockBasis:
    """Occupation-number basis, graded by total photon number.

    states[i] is the i-th occupation vector; `index_of` maps occupation
    tuples back to row indices.  Per-slot annihilation matrices are built
    lazily and cached.
    """

    n_modes: int
    n_max: int
    states: np.ndarray
    _index: dict = field(repr=False)
    _ann_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n_slots(self):
        return 2 * self.n_modes

    @property
    def size(self):
        return len(self.states)

    def index_of(self, occupation):
        key = np.asarray(occupation, dtype=np.uint8).tobytes()
        return self._index[key]

    def occupation_string(self, i):
        return "|" + ",".join(str(int(n)) for n in self.states[i]) + ">"

    def totals(self):
        return self.states.sum(axis=1)


def build_fock_basis(n_modes, n_max):
    """Enumerate all occupation states with total <= n_max over 2*n_modes slots.

    Ordering: by total occupation, then by the slot multiset of the photons
    (vacuum, |1,0,...>, |0,1,0,...>, ..., |2,0,...>, |1,1,0,...>, ...).
    """
    if n_modes < 1:
        raise ConfigurationError("n_modes must be >= 1")
    if n_max < 0:
        raise ConfigurationError("n_max must be >= 0")
    n_slots = 2 * n_modes
    dim = basis_dimension(n_slots, n_max)
    if dim > MAX_BASIS_STATES:
        raise ConfigurationError(
            f"Fock basis would have {dim} states "
            f"(limit {MAX_BASIS_STATES}); reduce the grid or n_max"
        )
    if n_max > 255:
        raise ConfigurationError("n_max above 255 is not supported")

    states = np.zeros((dim, n_slots), dtype=np.int32)
    row = 0
    for total in range(n_max + 1):
        for combo in combinations_with_replacement(range(n_slots), total):
            for slot in combo:
                states[row, slot] += 1
            row += 1
    assert row == dim

    index = {
        states[i].astype(np.uint8).tobytes(): i for i in range(dim)
    }
    return FockBasis(n_modes=n_modes, n_max=n_max, states=states, _index=index)


@dataclass
class SparseHermitianOperator:
    """Sparse operator on the Fock factor (optionally tensored with spin
    identity on application).  `hermitian` records whether A = A^dagger is
    part of the contract; `hermiticity_defect` measures it."""

    dim: int
    matrix: sp.csr_matrix
    hermitian: bool = True

    def apply(self, psi):
        """Apply to a vector over the Fock factor or over Fock (x) aux space.

        If len(psi) = dim * s for an integer s > 1, the operator acts as
        A (x) I_s (Fock index slowest).
        """
        psi = np.asarray(psi)
        if psi.shape[0] == self.dim:
            return self.matrix @ psi
        s, rem = divmod(psi.shape[0], self.dim)
        if rem != 0:
            raise ConfigurationError(
                f"vector length {psi.shape[0]} is not a multiple of dim {self.dim}"
            )
        return (self.matrix @ psi.reshape(self.dim, s)).reshape(-1)

    def to_dense(self):
        return self.matrix.toarray()

    def hermiticity_defect(self):
        d = self.matrix - self.matrix.getH()
        return 0.0 if d.nnz == 0 else float(np.abs(d.data).max())

    def expectation(self, psi):
        val = np.vdot(psi, self.apply(psi))
        return val.real if self.hermitian else val


def annihilation_matrix(basis, j):
    """Sparse matrix of a_j: |... n_j ...> -> sqrt(n_j) |... n_j - 1 ...>."""
    if not 0 <= j < basis.n_slots:
        raise ConfigurationError(f"slot index {j} out of range")
    cached = basis._ann_cache.get(j)
    if cached is not None:
        return cached
    occ = basis.states[:, j]
    cols = np.nonzero(occ > 0)[0]
    rows = np.empty(len(cols), dtype=np.int64)
    for out, col in enumerate(cols):
        target = basis.states[col].copy()
        target[j] -= 1
        rows[out] = basis.index_of(target)
    data = np.sqrt(occ[cols].astype(float))
    mat = sp.csr_matrix(
        (data, (rows, cols)), shape=(basis.size, basis.size), dtype=float
    )
    basis._ann_cache[j] = mat
    return mat


def ladder(basis, j, direction, psi):
    """Apply a_j ("annihilate") or a_j^dagger ("create") to psi.

    Creation out of the top grade is dropped (truncation semantics); psi may
    live on the Fock factor alone or on Fock (x) spin.
    """
    mat = annihilation_matrix(basis, j)
    if direction == "annihilate":
        op = mat
    elif direction == "create":
        op = mat.T
    else:
        raise ConfigurationError(f"unknown ladder direction {direction!r}")
    return SparseHermitianOperator(basis.size, op.tocsr(), hermitian=False).apply(
        np.asarray(psi, dtype=complex)
    )


def d_gamma(basis, diag):
    """Second quantization of a diagonal one-photon operator.

    Occupation state n gets eigenvalue sum_i n_i * diag_i.
    """
    diag = np.asarray(diag, dtype=float)
    if diag.shape != (basis.n_slots,):
        raise ConfigurationError(
            f"diagonal length {diag.shape} does not match {basis.n_slots} slots"
        )
    values = basis.states @ diag
    return SparseHermitianOperator(
        basis.size, sp.diags(values, format="csr"), hermitian=True
    )


def number_operator(basis):
    """Total photon number N = dGamma(I)."""
    return d_gamma(basis, np.ones(basis.n_slots))


def segal_field(basis, coefficients):
    """Hermitian field operator (a(V) + a(V)^dagger)/sqrt(2).

    a(V) = sum_j conj(V_j) a_j is antilinear in V; the result is Hermitian
    for every complex coefficient vector.
    """
    V = np.asarray(coefficients, dtype=complex)
    if V.shape != (basis.n_slots,):
        raise ConfigurationError(
            f"coefficient length {V.shape} does not match {basis.n_slots} slots"
        )
    acc = sp.csr_matrix((basis.size, basis.size), dtype=complex)
    for j in np.nonzero(V)[0]:
        acc = acc + np.conj(V[j]) * annihilation_matrix(basis, j)
    mat = (acc + acc.getH()) / np.sqrt(2.0)
    return SparseHermitianOperator(basis.size, mat.tocsr(), hermitian=True)
