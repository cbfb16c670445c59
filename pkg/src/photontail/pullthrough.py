"""Photon amplitudes of the ground state via the pull-through identity.

For a ground pair H U = E U the commutators [dGamma(omega), a] = -omega a
and sqrt(2) [Phi_S(V), a_j] = -V_j turn the amplitude a(k) U into resolvent
solves:

    a(k) U = -(g/sqrt(2)) sum_{lam,m} B_{m,x_lam}(k) (H - E + |k|)^{-1} f_m^[lam]

with f_m^[lam] = (I (x) sigma_m^[lam]) U.  The identity is exact in the
untruncated space; on the truncated space its defect is confined to the top
occupation grade and shrinks as n_max grows, which `pullthrough_residual`
measures slot by slot.  The formula itself is taken as the definition of
the amplitude at arbitrary k, which is what the spatial-asymptotics layer
consumes.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigurationError, DomainError
from .fock import DENSE_THRESHOLD, ladder, number_operator
from .modes import field_coefficient
from .solvers import ShiftedHermitianSolver, resolvent_apply  # noqa: F401  (re-export)
from .spin import apply_spin_operator, sigma_op

_RADIUS_CACHE_LIMIT = 4096


@dataclass
class AmplitudeVector:
    """Element of H^3: one state-space vector per spatial axis of the field."""

    components: np.ndarray  # (3, dim) complex

    def norm(self):
        return float(np.linalg.norm(self.components))

    def dot_direction(self, k):
        """Contract the spatial axes with a 3-vector (transversality checks)."""
        return np.tensordot(np.asarray(k, dtype=complex), self.components, axes=1)

    def component_overlaps(self, U):
        """3-vector of overlaps <U, component_i>."""
        return np.conj(U) @ self.components.T

    def __add__(self, other):
        return AmplitudeVector(self.components + other.components)

    def __sub__(self, other):
        return AmplitudeVector(self.components - other.components)

    def __mul__(self, scalar):
        return AmplitudeVector(self.components * scalar)

    __rmul__ = __mul__


@dataclass
class SpectralSurrogate:
    """Everything the amplitude and asymptotics machinery needs:
    a Hermitian H with lowest eigenpair (E, U), the spin-rotated vectors
    f[lam, m], the coupling, cutoff and particle positions.  May come from
    an assembled model or be a synthetic fixture."""

    H: object
    E: float
    U: np.ndarray
    f: np.ndarray                # (P, 3, dim)
    g: float
    chi: object
    positions: np.ndarray        # (P, 3)
    model: object = None
    dense_threshold: int = DENSE_THRESHOLD
    solver_tol: float = 1e-10
    solver: ShiftedHermitianSolver = dc_field(init=False, repr=False)
    _radius_cache: dict = dc_field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.U = np.asarray(self.U, dtype=complex)
        self.f = np.asarray(self.f, dtype=complex)
        self.positions = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if abs(np.linalg.norm(self.U) - 1.0) > 1e-9:
            raise ConfigurationError("surrogate ground vector must be normalized")
        self.solver = ShiftedHermitianSolver(
            self.H, E=self.E, ground=self.U,
            dense_threshold=self.dense_threshold, tol=self.solver_tol,
        )
        resid = np.linalg.norm(self.solver.H @ self.U - self.E * self.U)
        if resid > 1e-7 * max(1.0, abs(self.E)):
            raise ConfigurationError(
                f"(H, E, U) is not an eigenpair: residual {resid:.3e}"
            )
        norms = np.linalg.norm(self.f, axis=2)
        if np.any(np.abs(norms - 1.0) > 1e-8):
            raise ConfigurationError("surrogate f vectors must have unit norm")

    @property
    def n_particles(self):
        return self.positions.shape[0]

    @property
    def dim(self):
        return self.U.shape[0]

    def spin_overlaps(self):
        """S_m = sum_lam Re <U, f_m^[lam]>; equals the total-spin vector when
        the surrogate comes from an assembled model."""
        return np.einsum("i,lmi->m", np.conj(self.U), self.f).real

    def resolved(self, radius):
        """(H - E + radius)^{-1} f for all (lam, m), cached per radius.

        The resolvent depends on k only through |k|; the cache key rounds
        the radius to 12 significant digits.
        """
        key = float(np.format_float_scientific(radius, precision=11))
        hit = self._radius_cache.get(key)
        if hit is not None:
            return hit
        P = self.n_particles
        out = np.empty((P, 3, self.dim), dtype=complex)
        for lam in range(P):
            for m in range(3):
                out[lam, m] = self.solver.solve(radius, self.f[lam, m])
        if len(self._radius_cache) >= _RADIUS_CACHE_LIMIT:
            self._radius_cache.clear()
        self._radius_cache[key] = out
        return out


def surrogate_from_model(model, gs, dense_threshold=DENSE_THRESHOLD,
                         solver_tol=1e-10):
    """Bundle an assembled model and its ground state for amplitude work."""
    P = model.config.n_particles
    f = np.empty((P, 3, model.dim), dtype=complex)
    for lam in range(P):
        for m in range(3):
            f[lam, m] = apply_spin_operator(
                sigma_op(m + 1, lam + 1, P), gs.U
            )
    return SpectralSurrogate(
        H=model.h_full.matrix, E=gs.E, U=gs.U, f=f, g=model.g,
        chi=model.chi, positions=model.config.positions, model=model,
        dense_threshold=dense_threshold, solver_tol=solver_tol,
    )


def photon_amplitude(surrogate, k):
    """a(k) U as an H^3 element, via the pull-through formula; k != 0."""
    k = np.asarray(k, dtype=float)
    radius = float(np.linalg.norm(k))
    if radius == 0.0:
        raise DomainError("photon amplitude undefined at k = 0")
    ys = surrogate.resolved(radius)
    comps = np.zeros((3, surrogate.dim), dtype=complex)
    for lam in range(surrogate.n_particles):
        x = surrogate.positions[lam]
        for m in range(3):
            B = field_coefficient(m + 1, x, k, surrogate.chi)
            comps += B[:, None] * ys[lam, m][None, :]
    return AmplitudeVector(components=-(surrogate.g / np.sqrt(2.0)) * comps)


def amplitude_bound(surrogate, k):
    """Upper bound (g/sqrt 2) sum_{lam,m} |B_{m,x_lam}(k)| / |k| on ||a(k)U||."""
    k = np.asarray(k, dtype=float)
    radius = float(np.linalg.norm(k))
    if radius == 0.0:
        raise DomainError("bound undefined at k = 0")
    total = 0.0
    for lam in range(surrogate.n_particles):
        for m in range(3):
            B = field_coefficient(m + 1, surrogate.positions[lam], k, surrogate.chi)
            total += float(np.linalg.norm(B))
    return surrogate.g / np.sqrt(2.0) * total / radius


def pullthrough_residual(surrogate, j):
    """Truncation defect of the discrete pull-through identity at slot j:

        || a_j U + (g/sqrt 2) sum_{lam,m} c_{m,lam,j} (H-E+omega_j)^{-1} f_m^[lam] ||

    where c are the grid-embedded coupling coefficients.  Zero at g = 0 and
    in the untruncated limit.
    """
    model = surrogate.model
    if model is None:
        raise ConfigurationError(
            "pullthrough_residual needs a surrogate built from an assembled model"
        )
    omega_j = float(model.grid.slot_omega[j])
    lhs = ladder(model.basis, j, "annihilate", surrogate.U)
    ys = surrogate.resolved(omega_j)
    acc = np.zeros(surrogate.dim, dtype=complex)
    for lam in range(surrogate.n_particles):
        for m in range(3):
            acc += model.coupling_vectors[lam, m, j] * ys[lam, m]
    return float(np.linalg.norm(lhs + surrogate.g / np.sqrt(2.0) * acc))


def number_check(surrogate):
    """Discrete photon-number identity.

    Returns (lhs, rhs) with lhs = sum_j ||a_j U||^2 summed by direct ladder
    application and rhs = <(N (x) I) U, U>; the two agree to rounding on the
    truncated space because states hold at most n_max occupied slots.
    """
    model = surrogate.model
    if model is None:
        raise ConfigurationError(
            "number_check needs a surrogate built from an assembled model"
        )
    lhs = 0.0
    for j in range(model.grid.n_slots):
        aU = ladder(model.basis, j, "annihilate", surrogate.U)
        lhs += float(np.vdot(aU, aU).real)
    N = number_operator(model.basis)
    rhs = float(np.vdot(surrogate.U, N.apply(surrogate.U)).real)
    return lhs, rhs
