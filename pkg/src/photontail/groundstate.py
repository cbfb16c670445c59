"""Lowest eigenpair of the assembled Hamiltonian.

Dense solve below the dimension threshold, Lanczos (ARPACK) with a seeded
start vector above.  The global phase is fixed by rotating the
largest-magnitude amplitude onto the positive real axis, which makes reruns
bit-reproducible.  A gap below the degeneracy threshold aborts: the
uniqueness regime (nonzero external field, small coupling) does not hold
for that configuration.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla
from scipy.linalg import eigh

from .errors import DegenerateGroundStateError, SolverError
from .fock import DENSE_THRESHOLD


@dataclass
class GroundState:
    E: float
    U: np.ndarray
    gap: float
    residual: float
    phase_convention: str = "largest-amplitude-real-positive"


def degeneracy_threshold(E):
    return 1e-8 * abs(E) + 1e-10


def fix_phase(U):
    i = int(np.argmax(np.abs(U)))
    pivot = U[i]
    if pivot != 0:
        U = U * (np.conj(pivot) / abs(pivot))
    return U


def ground_state(model, tol=1e-10, seed=0, dense_threshold=DENSE_THRESHOLD):
    """Lowest eigenpair, spectral gap and residual of model.h_full."""
    H = model.h_full.matrix
    dim = model.h_full.dim
    if dim <= dense_threshold:
        evals, evecs = eigh(H.toarray())
        e0, e1 = float(evals[0]), float(evals[1])
        U = np.ascontiguousarray(evecs[:, 0]).astype(complex)
    else:
        rng = np.random.default_rng(seed)
        v0 = rng.standard_normal(dim)
        try:
            evals, evecs = spla.eigsh(H, k=2, which="SA", v0=v0,
                                      tol=max(tol * 1e-2, 1e-14), maxiter=20000)
        except spla.ArpackNoConvergence as exc:
            raise SolverError(f"eigensolver did not converge: {exc}") from exc
        order = np.argsort(evals)
        e0, e1 = float(evals[order[0]]), float(evals[order[1]])
        U = np.ascontiguousarray(evecs[:, order[0]]).astype(complex)

    threshold = degeneracy_threshold(e0)
    if e1 - e0 < threshold:
        raise DegenerateGroundStateError(e0, e1, threshold)

    U = U / np.linalg.norm(U)
    U = fix_phase(U)
    residual = float(np.linalg.norm(H @ U - e0 * U))
    if residual > max(tol, 1e-12 * max(1.0, abs(e0))) * 100:
        raise SolverError(
            f"ground-state residual {residual:.3e} above tolerance {tol:.1e}",
            residual=residual,
        )
    return GroundState(E=e0, U=U, gap=e1 - e0, residual=residual)
