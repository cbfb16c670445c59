"""Discretized transverse one-photon space.

Momentum space is sampled on a product grid: Gauss-Legendre nodes in the
radial variable times an octahedrally symmetric rule on the unit sphere.
Each node carries a 3D quadrature weight (rho^2 Jacobian included), its
frequency omega = |k| and a deterministic pair of transverse polarization
vectors.  A continuum transverse field V is embedded into slot coefficients

    c[j, s] = sqrt(w_j) * eps[j, s] . V(k_j)

so that the discrete l2 inner product approximates the L2 one.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConfigurationError, DomainError

_AXES = np.eye(3)

# Octahedral sphere rules (weights sum to 4*pi).  The 6-point rule is exact
# through degree 3, the 14-point through degree 5, the 26-point through 7.
_SQ2 = 1.0 / np.sqrt(2.0)
_SQ3 = 1.0 / np.sqrt(3.0)


def _oct_vertices():
    return np.array(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
        dtype=float,
    )


def _oct_edges():
    pts = []
    for i in range(3):
        for j in range(i + 1, 3):
            for si in (1, -1):
                for sj in (1, -1):
                    p = np.zeros(3)
                    p[i], p[j] = si * _SQ2, sj * _SQ2
                    pts.append(p)
    return np.array(pts)


def _oct_corners():
    return np.array(
        [[sx * _SQ3, sy * _SQ3, sz * _SQ3]
         for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    )


def sphere_rule(order):
    """Return (directions, weights) of the octahedral rule with `order` points.

    Supported orders: 6, 14, 26.  Weights sum to 4*pi.
    """
    fourpi = 4.0 * np.pi
    if order == 6:
        dirs = _oct_vertices()
        wts = np.full(6, fourpi / 6.0)
    elif order == 14:
        dirs = np.vstack([_oct_vertices(), _oct_corners()])
        wts = fourpi * np.concatenate([np.full(6, 1 / 15), np.full(8, 3 / 40)])
    elif order == 26:
        dirs = np.vstack([_oct_vertices(), _oct_edges(), _oct_corners()])
        wts = fourpi * np.concatenate(
            [np.full(6, 1 / 21), np.full(12, 4 / 105), np.full(8, 9 / 280)]
        )
    else:
        raise ConfigurationError(
            f"unsupported angular order {order!r}; supported: 6, 14, 26"
        )
    return dirs, wts


def gauss_product_sphere(n_polar):
    """High-order product rule on S^2 for oracle integrations.

    Gauss-Legendre in cos(theta) times a uniform azimuthal grid with
    2*n_polar points; integrates spherical harmonics up to degree
    ~2*n_polar - 1.  Weights sum to 4*pi.
    """
    ct, wt = leggauss(n_polar)
    phi = (np.arange(2 * n_polar) + 0.5) * np.pi / n_polar
    st = np.sqrt(1.0 - ct**2)
    dirs = np.stack(
        [
            np.outer(st, np.cos(phi)),
            np.outer(st, np.sin(phi)),
            np.outer(ct, np.ones_like(phi)),
        ],
        axis=-1,
    ).reshape(-1, 3)
    wts = np.repeat(wt, 2 * n_polar) * (np.pi / n_polar)
    return dirs, wts


@dataclass(frozen=True)
class CutoffFunction:
    """Ultraviolet cutoff chi(rho): smooth, real, rapidly decreasing.

    family "gaussian":     chi(rho) = amplitude * exp(-(rho/scale)^2)
    family "exponential":  chi(rho) = amplitude * exp(-rho/scale)
    """

    family: str = "gaussian"
    amplitude: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if self.family not in ("gaussian", "exponential"):
            raise ConfigurationError(f"unknown cutoff family {self.family!r}")
        if self.scale <= 0:
            raise ConfigurationError("cutoff scale must be positive")

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        if self.family == "gaussian":
            return self.amplitude * np.exp(-((rho / self.scale) ** 2))
        return self.amplitude * np.exp(-rho / self.scale)

    @property
    def at_zero(self):
        return self.amplitude

    def support_radius(self):
        """Radius beyond which chi is below ~1e-21 of its amplitude."""
        return 7.0 * self.scale if self.family == "gaussian" else 48.0 * self.scale


def polarization_pair(k):
    """Deterministic transverse orthonormal pair (eps1, eps2) for k != 0.

    eps1 = normalize(a x k) with a = e3, switching to a = e1 near the pole
    (|k_hat . e3| > 0.9); eps2 = k_hat x eps1.  The frame is gauge: any other
    tie-break changes operators by a unitary conjugation only.
    """
    k = np.asarray(k, dtype=float)
    norm = np.linalg.norm(k)
    if norm == 0.0:
        raise DomainError("polarization frame undefined at k = 0")
    khat = k / norm
    a = _AXES[2] if abs(khat[2]) <= 0.9 else _AXES[0]
    e1 = np.cross(a, khat)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(khat, e1)
    return e1, e2


@dataclass(frozen=True)
class ModeGrid:
    """Quadrature nodes of momentum space with transverse frames.

    k:      (M, 3) node positions, all nonzero
    weight: (M,) positive 3D quadrature weights (rho^2 Jacobian included)
    omega:  (M,) frequencies |k|
    pol:    (M, 2, 3) orthonormal transverse pairs per node

    Slot convention: slot 2*j + s is (node j, polarization s); arrays
    `slot_omega` and `slot_node` expand per-node data to the 2M slots.
    """

    k: np.ndarray
    weight: np.ndarray
    omega: np.ndarray
    pol: np.ndarray
    k_max: float
    slot_omega: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "slot_omega", np.repeat(self.omega, 2))

    @property
    def n_modes(self):
        return len(self.omega)

    @property
    def n_slots(self):
        return 2 * len(self.omega)


def build_mode_grid(n_radial, angular_order, k_max, frame="default"):
    """Product quadrature grid for the momentum ball of radius k_max.

    Gauss-Legendre radial nodes on (0, k_max] (open at 0, so no zero mode)
    times an octahedral sphere rule.  `frame` selects the polarization
    tie-break ("default" or "alt"); physical results cannot depend on it.
    """
    if n_radial < 1:
        raise ConfigurationError("n_radial must be >= 1")
    if k_max <= 0:
        raise ConfigurationError("k_max must be positive")
    xr, wr = leggauss(n_radial)
    rho = k_max * (xr + 1.0) / 2.0
    wrho = (k_max / 2.0) * wr
    dirs, wsph = sphere_rule(angular_order)

    ks, wts, oms, pols = [], [], [], []
    for i in range(n_radial):
        for a in range(len(dirs)):
            kvec = rho[i] * dirs[a]
            if frame == "default":
                e1, e2 = polarization_pair(kvec)
            elif frame == "alt":
                e1, e2 = _alt_polarization_pair(kvec)
            else:
                raise ConfigurationError(f"unknown polarization frame {frame!r}")
            ks.append(kvec)
            wts.append(wrho[i] * rho[i] ** 2 * wsph[a])
            oms.append(rho[i])
            pols.append((e1, e2))
    return ModeGrid(
        k=np.array(ks),
        weight=np.array(wts),
        omega=np.array(oms),
        pol=np.array(pols),
        k_max=float(k_max),
    )


def _alt_polarization_pair(k):
    # Alternative tie-break used by the gauge-invariance check.
    k = np.asarray(k, dtype=float)
    norm = np.linalg.norm(k)
    if norm == 0.0:
        raise DomainError("polarization frame undefined at k = 0")
    khat = k / norm
    a = _AXES[1] if abs(khat[1]) <= 0.8 else _AXES[2]
    e1 = np.cross(a, khat)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(khat, e1)
    return e1, e2


def transverse_project(k, f):
    """Project f onto the plane orthogonal to k:  f - k (f.k)/|k|^2."""
    k = np.asarray(k, dtype=float)
    f = np.asarray(f)
    k2 = float(np.dot(k, k))
    if k2 == 0.0:
        raise DomainError("transverse projection undefined at k = 0")
    return f - k * (np.dot(f, k) / k2)


def field_coefficient(m, x, k, chi):
    """Magnetic coupling coefficient at momentum k for field axis m (1..3).

    Returns the complex 3-vector

        i * chi(|k|) * |k|^(1/2) / (2 pi)^(3/2) * exp(-i k.x) * (k x e_m)/|k|

    which is orthogonal to k by construction.  k = 0 is outside the domain.
    """
    if m not in (1, 2, 3):
        raise DomainError(f"field axis must be 1..3, got {m}")
    k = np.asarray(k, dtype=float)
    rho = np.linalg.norm(k)
    if rho == 0.0:
        raise DomainError("field coefficient undefined at k = 0")
    x = np.asarray(x, dtype=float)
    pref = 1j * float(chi(rho)) * np.sqrt(rho) / (2.0 * np.pi) ** 1.5
    return pref * np.exp(-1j * np.dot(k, x)) * np.cross(k, _AXES[m - 1]) / rho


def field_coefficient_batch(m, x, ks, chi):
    """Vectorized field_coefficient over rows of `ks` (shape (n, 3))."""
    if m not in (1, 2, 3):
        raise DomainError(f"field axis must be 1..3, got {m}")
    ks = np.asarray(ks, dtype=float)
    rho = np.linalg.norm(ks, axis=1)
    if np.any(rho == 0.0):
        raise DomainError("field coefficient undefined at k = 0")
    x = np.asarray(x, dtype=float)
    pref = 1j * chi(rho) * np.sqrt(rho) / (2.0 * np.pi) ** 1.5
    phase = np.exp(-1j * ks @ x)
    return (pref * phase)[:, None] * np.cross(ks, _AXES[m - 1]) / rho[:, None]


def embed_field(m, x, grid, chi):
    """Slot coefficients of the coupling field:  c[2j+s] = sqrt(w_j) eps_s.B.

    The discrete norm^2 of the result approximates the L2 norm^2 of the
    continuum field (transversality makes the two polarization components
    exhaust |B|^2 at each node).
    """
    B = field_coefficient_batch(m, x, grid.k, chi)
    sw = np.sqrt(grid.weight)
    coeff = np.empty(grid.n_slots, dtype=complex)
    coeff[0::2] = sw * np.einsum("ji,ji->j", grid.pol[:, 0, :], B)
    coeff[1::2] = sw * np.einsum("ji,ji->j", grid.pol[:, 1, :], B)
    return coeff
