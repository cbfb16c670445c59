"""Assembly of H(g) = H0 + g H_int on the Fock (x) spin space.

    H0    = dGamma(omega) (x) I  +  sum_{lam,m} Bext_m (I (x) sigma_m^[lam])
    H_int = sum_{lam,m} Phi_S(B_{m,x_lam}) (x) sigma_m^[lam]

with the coupling fields B_{m,x_lam} sampled onto the mode grid.  Kronecker
order is Fock slowest, spin fastest, matching spin.apply_spin_operator.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import AssemblyError, ConfigurationError
from .fock import (FockBasis, SparseHermitianOperator, build_fock_basis,
                   basis_dimension, d_gamma, segal_field)
from .modes import CutoffFunction, ModeGrid, embed_field
from .spin import sigma_op

MAX_TOTAL_DIMENSION = 2_000_000
HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class ModelConfig:
    g: float
    bext: np.ndarray
    positions: np.ndarray
    chi: CutoffFunction
    grid: ModeGrid
    n_max: int
    require_unique: bool = False

    def __post_init__(self):
        object.__setattr__(self, "bext", np.asarray(self.bext, dtype=float))
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        object.__setattr__(self, "positions", pos)
        if self.g < 0:
            raise ConfigurationError("coupling g must be >= 0")
        if pos.shape[0] < 1 or pos.shape[1] != 3:
            raise ConfigurationError("positions must be a (P, 3) array with P >= 1")
        if self.require_unique and np.linalg.norm(self.bext) == 0:
            raise ConfigurationError(
                "uniqueness of the ground state needs a nonzero external field"
            )

    @property
    def n_particles(self):
        return self.positions.shape[0]


@dataclass
class AssembledModel:
    """H(g) with its parts kept separately:  H = h_free + h_spin + g * h_int."""

    config: ModelConfig
    basis: FockBasis
    h_full: SparseHermitianOperator
    h_free: sp.csr_matrix
    h_spin: sp.csr_matrix
    h_int: sp.csr_matrix
    coupling_vectors: np.ndarray  # (P, 3, n_slots) embedded B_{m,x_lam}
    spin_matrices: np.ndarray     # (P, 3, 2^P, 2^P)
    g: float

    @property
    def dim(self):
        return self.h_full.dim

    @property
    def n_spin(self):
        return 2 ** self.config.n_particles

    @property
    def grid(self):
        return self.config.grid

    @property
    def chi(self):
        return self.config.chi

    def hamiltonian_at(self, g):
        """H(g') for a different coupling on the same assembled parts."""
        mat = (self.h_free + self.h_spin + g * self.h_int).tocsr()
        return SparseHermitianOperator(self.h_full.dim, mat, hermitian=True)


def assemble(config):
    """Build H(g) and verify Hermiticity of every part."""
    grid = config.grid
    P = config.n_particles
    n_spin = 2**P
    nf = basis_dimension(2 * grid.n_modes, config.n_max)
    if nf * n_spin > MAX_TOTAL_DIMENSION:
        raise ConfigurationError(
            f"total dimension {nf * n_spin} exceeds limit {MAX_TOTAL_DIMENSION}"
        )
    basis = build_fock_basis(grid.n_modes, config.n_max)

    id_spin = sp.identity(n_spin, format="csr", dtype=complex)
    id_fock = sp.identity(basis.size, format="csr", dtype=complex)

    h_photon = d_gamma(basis, grid.slot_omega)
    h_free = sp.kron(h_photon.matrix, id_spin, format="csr").astype(complex)

    sig = np.empty((P, 3), dtype=object)
    spin_field = sp.csr_matrix((n_spin, n_spin), dtype=complex)
    for lam in range(P):
        for m in range(3):
            sig[lam, m] = sigma_op(m + 1, lam + 1, P).matrix
            spin_field = spin_field + config.bext[m] * sp.csr_matrix(sig[lam, m])
    h_spin = sp.kron(id_fock, spin_field, format="csr")

    coupling = np.empty((P, 3, grid.n_slots), dtype=complex)
    h_int = sp.csr_matrix((nf * n_spin, nf * n_spin), dtype=complex)
    for lam in range(P):
        for m in range(3):
            V = embed_field(m + 1, config.positions[lam], grid, config.chi)
            coupling[lam, m] = V
            phi = segal_field(basis, V)
            h_int = h_int + sp.kron(phi.matrix, sp.csr_matrix(sig[lam, m]),
                                    format="csr")

    h_mat = (h_free + h_spin + config.g * h_int).tocsr()
    h_full = SparseHermitianOperator(nf * n_spin, h_mat, hermitian=True)

    defect = h_full.hermiticity_defect()
    scale = max(1.0, float(np.abs(h_mat.data).max()) if h_mat.nnz else 1.0)
    if defect > HERMITICITY_TOL * scale:
        raise AssemblyError(
            f"assembled Hamiltonian is not Hermitian (defect {defect:.3e})"
        )

    spin_matrices = np.array(
        [[np.asarray(sig[lam, m]) for m in range(3)] for lam in range(P)]
    )
    return AssembledModel(
        config=config,
        basis=basis,
        h_full=h_full,
        h_free=h_free,
        h_spin=h_spin,
        h_int=h_int,
        coupling_vectors=coupling,
        spin_matrices=spin_matrices,
        g=config.g,
    )
