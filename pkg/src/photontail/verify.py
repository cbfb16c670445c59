"""Aggregated invariant suite behind `photontail verify`.

Each check returns (name, passed, detail).  Operator-algebra identities run
on a small desk basis; model-dependent checks run on the configured model;
the asymptotic-law checks run on a reduced surrogate so the whole suite
stays laptop-friendly.
"""

import numpy as np

from . import asymptotics as asym
from . import fock, modes, spin
from .groundstate import ground_state
from .hamiltonian import ModelConfig, assemble
from .pullthrough import (amplitude_bound, number_check, photon_amplitude,
                          pullthrough_residual, surrogate_from_model)


def _check(name, passed, detail):
    return (name, bool(passed), detail)


def _small_surrogate(cfg, n_radial=3, n_max=1):
    mc = ModelConfig(
        g=cfg.g if cfg.g > 0 else 0.1,
        bext=cfg.bext if np.linalg.norm(cfg.bext) > 0 else np.array([0, 0, 1.0]),
        positions=np.zeros((1, 3)),
        chi=cfg.cutoff(),
        grid=modes.build_mode_grid(n_radial, 6, cfg.k_max),
        n_max=n_max,
    )
    model = assemble(mc)
    gs = ground_state(model, seed=cfg.seed)
    return surrogate_from_model(model, gs)


def check_mode_grid(cfg):
    grid = cfg.mode_grid()
    chi = cfg.cutoff()
    worst_t, worst_c = 0.0, 0.0
    for j in range(grid.n_modes):
        k = grid.k[j]
        e1, e2 = grid.pol[j]
        khat = k / np.linalg.norm(k)
        comp = np.outer(e1, e1) + np.outer(e2, e2) + np.outer(khat, khat)
        worst_c = max(worst_c, float(np.abs(comp - np.eye(3)).max()))
        for m in (1, 2, 3):
            B = modes.field_coefficient(m, np.array([0.3, -0.2, 0.5]), k, chi)
            nb = np.linalg.norm(B)
            if nb > 0:
                worst_t = max(worst_t, abs(np.dot(k, B)) / nb)
    ball = grid.weight.sum()
    exact = 4.0 * np.pi / 3.0 * grid.k_max**3
    vol_err = abs(ball - exact) / exact
    ok = worst_t <= 1e-14 and worst_c <= 1e-12 and vol_err <= 1e-12
    return _check(
        "mode-grid transversality/completeness/ball-volume", ok,
        f"transversality {worst_t:.2e}, completeness {worst_c:.2e}, "
        f"volume rel err {vol_err:.2e}",
    )


def check_operator_algebra(cfg, n_vectors=100):
    rng = np.random.default_rng(cfg.seed)
    basis = fock.build_fock_basis(2, 3)  # 4 slots, n_max = 3
    interior = basis.totals() <= basis.n_max - 1
    worst = 0.0
    ann = [fock.annihilation_matrix(basis, j).toarray() for j in range(4)]
    omega = np.array([0.5, 0.9, 1.3, 2.1])
    dG = fock.d_gamma(basis, omega).to_dense()
    for _ in range(n_vectors):
        psi = rng.standard_normal(basis.size) + 1j * rng.standard_normal(basis.size)
        psi[~interior] = 0.0
        psi /= np.linalg.norm(psi)
        V = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        phi = fock.segal_field(basis, V).to_dense()
        worst = max(worst, float(np.abs(phi - phi.conj().T).max()))
        for j in range(4):
            for i in range(4):
                comm = ann[i] @ ann[j].T - ann[j].T @ ann[i]
                delta = (1.0 if i == j else 0.0) * np.eye(basis.size)
                worst = max(worst, float(np.linalg.norm((comm - delta) @ psi)))
            worst = max(
                worst,
                float(np.linalg.norm((dG @ ann[j] - ann[j] @ dG + omega[j] * ann[j]) @ psi)),
            )
            worst = max(
                worst,
                float(np.linalg.norm(
                    np.sqrt(2.0) * (phi @ ann[j] - ann[j] @ phi) @ psi - (-V[j]) * psi
                )),
            )
    return _check("operator algebra (CCR, commutators, Segal hermiticity)",
                  worst <= 1e-12, f"worst residual {worst:.2e}")


def check_model(cfg):
    model = assemble(cfg.model_config(require_unique=True))
    gs = ground_state(model, tol=cfg.solver_tol, seed=cfg.seed,
                      dense_threshold=cfg.dense_threshold)
    s = surrogate_from_model(model, gs, dense_threshold=cfg.dense_threshold)
    defect = model.h_full.hermiticity_defect()
    lhs, rhs = number_check(s)
    num_err = abs(lhs - rhs) / (1.0 + rhs)
    ok = defect <= 1e-10 and num_err <= 1e-12
    return _check(
        "model hermiticity + number identity", ok,
        f"E {gs.E:.9g}, gap {gs.gap:.3e}, hermiticity {defect:.2e}, "
        f"number identity {num_err:.2e}",
    ), s


def check_pullthrough(cfg, s, n_k=60):
    rng = np.random.default_rng(cfg.seed + 1)
    worst = -np.inf
    for _ in range(n_k):
        k = rng.standard_normal(3)
        k *= rng.uniform(0.05, 1.2 * cfg.k_max) / np.linalg.norm(k)
        amp = photon_amplitude(s, k)
        bound = amplitude_bound(s, k)
        worst = max(worst, amp.norm() - bound * (1 + 1e-12))
        trans = np.linalg.norm(amp.dot_direction(k))
        if amp.norm() > 0 and trans > 1e-12 * np.linalg.norm(k) * amp.norm():
            return _check("pull-through bound + transversality", False,
                          f"transversality violated: {trans:.2e}")
    return _check("pull-through bound + transversality", worst <= 0,
                  f"max (norm - bound) = {worst:.2e} over {n_k} samples")


def check_truncation_residual(cfg):
    resids = []
    for n_max in (1, 2):
        mc = ModelConfig(
            g=0.05, bext=np.array([0, 0, 1.0]), positions=np.zeros((1, 3)),
            chi=cfg.cutoff(), grid=modes.build_mode_grid(2, 6, cfg.k_max),
            n_max=n_max,
        )
        model = assemble(mc)
        gs = ground_state(model, seed=cfg.seed)
        s = surrogate_from_model(model, gs)
        resids.append(max(pullthrough_residual(s, j)
                          for j in range(model.grid.n_slots)))
    ok = resids[1] < resids[0]
    return _check("pull-through truncation residual decreases", ok,
                  f"residuals {resids[0]:.3e} -> {resids[1]:.3e}")


def check_projection_limit(cfg):
    rng = np.random.default_rng(cfg.seed + 2)
    from .pullthrough import SpectralSurrogate

    n = 50
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = (A + A.conj().T) / 2.0
    evals, evecs = np.linalg.eigh(H)
    U = evecs[:, 0].astype(complex)
    f3 = np.array([U, evecs[:, 1], evecs[:, 2]])  # placeholder unit vectors
    s = SpectralSurrogate(H=H, E=float(evals[0]), U=U,
                          f=f3[None, :, :], g=1.0,
                          chi=modes.CutoffFunction(), positions=np.zeros((1, 3)))
    gap = float(evals[1] - evals[0])
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ok = True
    detail = []
    for kind, seq in (("real", gap * 10.0 ** -np.arange(7)),
                      ("imag", 1j * gap * 10.0 ** -np.arange(7))):
        table = asym.projection_limit_check(s, f, seq)
        final = table.errors[-1] / table.norm_f
        ok = ok and final <= 1e-4
        detail.append(f"{kind} final {final:.2e}")
    worst = 0.0
    for _ in range(50):
        z = complex(abs(rng.standard_normal()), rng.standard_normal())
        if rng.random() < 0.5:
            z = 1j * z.imag if z.imag != 0 else 1j
        fv = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        ratio = np.linalg.norm(asym.operator_filter(z, s, fv)) / np.linalg.norm(fv)
        worst = max(worst, ratio)
    ok = ok and worst <= 1 + 1e-12
    detail.append(f"max contraction ratio {worst:.15f}")
    return _check("projection limit + filter contraction", ok, ", ".join(detail))


def check_sphere_identity(cfg):
    rng = np.random.default_rng(cfg.seed + 3)
    worst = 0.0
    for lam in (0.1, 1.0, np.pi, 10.0):
        for _ in range(5):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            m = int(rng.integers(1, 4))
            diff = np.abs(
                asym.sphere_integral_reference(v, m, lam)
                - asym.sphere_integral_quadrature(v, m, lam)
            ).max()
            worst = max(worst, float(diff))
    return _check("sphere identity closed form vs quadrature",
                  worst <= 1e-8, f"worst abs diff {worst:.2e}")


def check_kernel_envelope(cfg):
    lam = np.logspace(-8, 4, 2000)
    K = asym.radial_kernel(lam, 1.0)
    ok = np.all(np.abs(K) <= asym.kernel_envelope(lam) * (1 + 1e-12))
    return _check("radial kernel envelope |K| <= min(2/x, x)", ok,
                  "2000 log-spaced arguments")


def check_contour(cfg, s):
    cal = abs(asym.contour_scalar_moment(r=10.0) - asym.GAUSSIAN_MOMENT)
    worst = 0.0
    for r in (10.0, 30.0, 100.0):
        direct = asym.reduced_radial_integral(
            s, 1, 1, r,
            modes.CutoffFunction("exponential", s.chi.at_zero, 1.0),
            48.0, refine=2,
        )
        cont = asym.radial_integral_contour(s, 1, 1, r)
        worst = max(worst, float(np.linalg.norm(cont - direct)
                                 / np.linalg.norm(direct)))
    ok = cal <= 1e-10 and worst <= 1e-6
    return _check("contour identity (calibration + direct agreement)", ok,
                  f"calibration err {cal:.2e}, worst rel diff {worst:.2e}")


def check_reduction_oracle(cfg, s):
    worst = 0.0
    for r in (1.0, 5.0):
        x = r * np.array([0.8, -0.36, 0.48])
        x *= r / np.linalg.norm(x)
        fine = asym.a_hat(s, x)
        brute = asym.a_hat_bruteforce(s, x)
        worst = max(worst, (fine - brute).norm() / brute.norm())
    return _check("radial reduction vs brute-force oracle", worst <= 1e-3,
                  f"worst rel diff {worst:.2e}")


def check_decay(cfg, s):
    report = asym.decay_report(
        s, radii=np.logspace(0, 4, 17), seed=cfg.seed,
        ahat_max_radius=min(cfg.ahat_max_radius, 1e3),
        kappa=cfg.kappa_value(),
    )
    sig = report.cross_norm > 0.1 * max(np.linalg.norm(report.spin_vector), 1e-12)
    msgs, ok = [], True

    slopes = report.slope_b[sig]
    ok &= np.all(np.abs(slopes + 2.5) <= 0.1)
    msgs.append(f"b slopes {np.round(slopes, 3)}")

    flat = report.slope_scaled[sig]
    ok &= np.all(np.abs(flat) <= 0.05)
    msgs.append(f"scaled slopes {np.round(flat, 4)}")

    err_slopes = report.slope_err[sig]
    err_slopes = err_slopes[np.isfinite(err_slopes)]
    ok &= err_slopes.size > 0 and np.all(err_slopes <= -2.7)
    msgs.append(f"error-lemma slopes {np.round(err_slopes, 3)}")

    ok &= np.all(report.pred_rel_diff[sig] <= 0.02)
    ok &= np.all(report.pred_cosine[sig] >= 0.999)
    msgs.append(f"limit rel diff {np.round(report.pred_rel_diff[sig], 5)}")

    par = report.labels.index("parallel") if "parallel" in report.labels else None
    if par is not None and sig.any():
        ratio = report.limit_norm[par] / report.limit_norm[sig].max()
        ok &= ratio <= 0.01
        msgs.append(f"parallel/perp limit ratio {ratio:.2e}")

    ok &= np.all(report.conv_diffs[sig, 1] < report.conv_diffs[sig, 0])
    ok &= not report.non_asymptotic
    msgs.append(f"kappa measured {report.kappa_measured:.6f}")
    return _check("decay law, boundedness, limit vector", bool(ok), "; ".join(msgs))


def run_verify(cfg, emit=print):
    """Run every invariant check; returns the number of failures."""
    results = []
    results.append(check_mode_grid(cfg))
    results.append(check_operator_algebra(cfg))
    model_result, s_model = check_model(cfg)
    results.append(model_result)
    results.append(check_pullthrough(cfg, s_model))
    results.append(check_truncation_residual(cfg))
    results.append(check_projection_limit(cfg))
    results.append(check_sphere_identity(cfg))
    results.append(check_kernel_envelope(cfg))
    s_small = _small_surrogate(cfg)
    results.append(check_contour(cfg, s_small))
    results.append(check_reduction_oracle(cfg, s_small))
    results.append(check_decay(cfg, s_small))

    failures = 0
    for name, ok, detail in results:
        emit(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        failures += 0 if ok else 1
    emit(f"{len(results) - failures}/{len(results)} checks passed")
    return failures
