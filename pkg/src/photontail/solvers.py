"""Repeated solves of (H - E + z) y = f for a fixed Hermitian H.

Admissible shifts have Re z >= 0 and z != 0; with spectrum(H) in [E, inf)
the shifted operator is then invertible and z (H - E + z)^{-1} is a
contraction.  Two paths:

  * dense (dim <= threshold): one Hermitian eigendecomposition, after which
    every shift is an elementwise division in the eigenbasis;
  * Lanczos (above): one Krylov reduction per right-hand side with full
    reorthogonalization, after which every shift is a small tridiagonal
    solve.  All shifts requested for the same f share the basis.

Weighted-sum entry points accumulate sum_q w_q (H-E+z_q)^{-1} f (or the
filtered variant with z (H-E+z)^{-1}) in the reduced basis, which is what
the radial quadratures need; only one back-transformation is paid per sum.

If the ground vector is known it is deflated analytically, which keeps the
Krylov path well conditioned for shifts far below the spectral gap.
"""

import hashlib

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .errors import DomainError, SolverError
from .fock import DENSE_THRESHOLD


def check_shift(z):
    z = complex(z)
    if z == 0:
        raise DomainError("shift z = 0 is outside the resolvent domain")
    if z.real < 0:
        raise DomainError(f"shift must have Re z >= 0, got {z}")
    return z


def _as_matrix(H):
    if sp.issparse(H):
        return H.tocsr()
    return np.asarray(H)


class _Reduced:
    """Spectral data of H restricted to (a Krylov subspace of) f's cycle:
    theta (eigenvalues), c (components of f), B (back-transformation),
    plus Lanczos residual data when approximate."""

    __slots__ = ("theta", "c", "B", "beta_last", "last_row", "exact", "deflated")

    def __init__(self, theta, c, B, beta_last=0.0, last_row=None, exact=True,
                 deflated=None):
        self.theta = theta
        self.c = c
        self.B = B
        self.beta_last = beta_last
        self.last_row = last_row
        self.exact = exact
        # (ground component, ||f||) when the ground direction was removed
        self.deflated = deflated


class ShiftedHermitianSolver:
    def __init__(self, H, E=None, ground=None, dense_threshold=DENSE_THRESHOLD,
                 tol=1e-10, max_steps=900):
        self.H = _as_matrix(H)
        self.dim = self.H.shape[0]
        self.tol = tol
        self.max_steps = min(max_steps, self.dim)
        self.ground = None if ground is None else np.asarray(ground, dtype=complex)
        self._dense = self.dim <= dense_threshold
        self._evals = None
        self._evecs = None
        self._krylov = {}
        if self._dense:
            Hd = self.H.toarray() if sp.issparse(self.H) else self.H
            self._evals, self._evecs = sla.eigh(Hd)
            self.E = float(self._evals[0]) if E is None else float(E)
        else:
            if E is None:
                raise SolverError("E must be provided for large operators")
            self.E = float(E)

    # -- reduction ---------------------------------------------------------

    def _reduce_dense(self, f):
        c = self._evecs.conj().T @ f
        return _Reduced(self._evals, c, self._evecs)

    def _lanczos(self, f, steps):
        """Lanczos with full reorthogonalization started from f.

        Returns (V, alpha, beta, exhausted); if the ground vector is known,
        f is kept orthogonal to it throughout.
        """
        V = np.empty((steps, self.dim), dtype=complex)
        alpha = np.empty(steps)
        beta = np.empty(steps)
        nrm = np.linalg.norm(f)
        if nrm == 0.0:
            return V[:0], alpha[:0], beta[:0], True
        v = f / nrm
        p = 0
        vprev = None
        b = 0.0
        while p < steps:
            V[p] = v
            w = self.H @ v
            if vprev is not None:
                w = w - b * vprev
            a = np.vdot(v, w).real
            w = w - a * v
            # full reorthogonalization (twice is enough)
            for _ in range(2):
                proj = V[: p + 1].conj() @ w
                w = w - proj @ V[: p + 1]
            if self.ground is not None:
                w = w - np.vdot(self.ground, w) * self.ground
            alpha[p] = a
            b = np.linalg.norm(w)
            beta[p] = b
            p += 1
            if b < 1e-14 * max(1.0, abs(a)):
                return V[:p], alpha[:p], beta[:p], True
            vprev = v
            v = w / b
        return V[:p], alpha[:p], beta[:p], False

    def _reduce_krylov(self, f, min_steps):
        key = hashlib.sha1(np.ascontiguousarray(f).tobytes()).hexdigest()
        entry = self._krylov.get(key)
        if entry is not None and (len(entry.theta) >= min_steps or entry.exact):
            return entry

        nrm = np.linalg.norm(f)
        cg = 0.0 + 0.0j
        fwork = f
        if self.ground is not None:
            cg = np.vdot(self.ground, f)
            fwork = f - cg * self.ground
        V, alpha, beta, exhausted = self._lanczos(fwork, min_steps)
        p = len(alpha)
        if p == 0:
            red = _Reduced(np.empty(0), np.empty(0, complex),
                           np.empty((self.dim, 0), complex), exact=True)
        else:
            theta, S = sla.eigh_tridiagonal(alpha, beta[: p - 1])
            nrm_w = np.linalg.norm(fwork)
            c = S[0] * nrm_w
            B = V.T @ S
            red = _Reduced(theta, c, B, beta_last=float(beta[p - 1]),
                           last_row=S[-1], exact=exhausted)
        red.deflated = (cg, nrm)
        self._krylov[key] = red
        return red

    def _reduced(self, f, steps=None):
        if self._dense:
            return self._reduce_dense(f)
        return self._reduce_krylov(f, steps or min(self.max_steps, 300))

    # -- solves ------------------------------------------------------------

    def _krylov_residuals(self, red, zs):
        if red.exact or red.last_row is None:
            return np.zeros(len(zs))
        u = red.c[:, None] / (red.theta[:, None] - self.E + zs[None, :])
        return red.beta_last * np.abs(red.last_row @ u)

    def _ensure_converged(self, f, zs):
        """Grow the Krylov basis until the worst requested shift meets tol."""
        red = self._reduced(f)
        nrm = np.linalg.norm(f)
        if nrm == 0.0 or red.exact or self._dense:
            return red
        steps = len(red.theta)
        while True:
            res = self._krylov_residuals(red, zs).max()
            if res <= self.tol * nrm or red.exact:
                return red
            if steps >= self.max_steps:
                raise SolverError(
                    f"shifted solve did not converge in {steps} Lanczos steps",
                    residual=float(res),
                )
            steps = min(self.max_steps, int(steps * 1.6) + 10)
            key = hashlib.sha1(np.ascontiguousarray(f).tobytes()).hexdigest()
            self._krylov.pop(key, None)
            red = self._reduce_krylov(f, steps)

    def solve(self, z, f):
        """y = (H - E + z)^{-1} f."""
        return self.solve_shifts(np.array([z]), f)[0]

    def solve_shifts(self, zs, f):
        """Stacked solves, one row per shift."""
        zs = np.asarray([check_shift(z) for z in zs], dtype=complex)
        f = np.asarray(f, dtype=complex)
        red = self._ensure_converged(f, zs)
        u = red.c[None, :] / (red.theta[None, :] - self.E + zs[:, None])
        out = u @ red.B.T
        if red.deflated is not None:
            cg = red.deflated[0]
            if cg != 0:
                out += (cg / zs)[:, None] * self.ground[None, :]
        return out

    def filter_apply(self, z, f):
        """F(z) f = z (H - E + z)^{-1} f."""
        return complex(check_shift(z)) * self.solve(z, f)

    def weighted_resolvent_sum(self, zs, weights, f):
        """sum_q w_q (H - E + z_q)^{-1} f, accumulated in the reduced basis."""
        return self._weighted(zs, weights, f, filtered=False)

    def weighted_filter_sum(self, zs, weights, f):
        """sum_q w_q z_q (H - E + z_q)^{-1} f."""
        return self._weighted(zs, weights, f, filtered=True)

    def _weighted(self, zs, weights, f, filtered):
        zs = np.asarray(zs, dtype=complex)
        if np.any(zs == 0) or np.any(zs.real < -1e-15):
            raise DomainError("all shifts must satisfy Re z >= 0, z != 0")
        weights = np.asarray(weights, dtype=complex)
        f = np.asarray(f, dtype=complex)
        red = self._ensure_converged(f, zs)
        scale = weights * zs if filtered else weights
        u = red.c[:, None] / (red.theta[:, None] - self.E + zs[None, :])
        reduced = u @ scale
        out = red.B @ reduced
        if red.deflated is not None:
            cg = red.deflated[0]
            if cg != 0:
                gfac = weights.sum() if filtered else (weights / zs).sum()
                out = out + cg * gfac * self.ground
        return out


def resolvent_apply(H, E, z, f, tol=1e-10, ground=None):
    """One-shot solve of (H - E + z) y = f with ||(H-E+z)y - f|| <= tol ||f||.

    For repeated shifts on the same operator build a ShiftedHermitianSolver
    once instead.
    """
    z = check_shift(z)
    solver = ShiftedHermitianSolver(H, E=E, ground=ground, tol=tol)
    y = solver.solve(z, f)
    Hf = solver.H @ y
    res = np.linalg.norm(Hf + (z - E) * y - f)
    nrm = np.linalg.norm(f)
    if nrm > 0 and res > max(tol, 1e3 * np.finfo(float).eps) * nrm * 10:
        raise SolverError(
            f"resolvent solve residual {res:.3e} exceeds tolerance", residual=res
        )
    return y
