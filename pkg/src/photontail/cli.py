"""Command-line pipeline: assemble -> ground -> amplitudes -> asymptotics.

Subcommands
    ground       lowest eigenpair; writes manifest.txt and ground_state.csv
    amplitude    photon amplitude norm and its bound at given k (or a k list)
    asymptotics  decay/limit study; writes decay.csv, limit.csv, manifest.txt
    verify       full invariant suite; nonzero exit on any failure

Exit codes: 0 ok, 1 verify failure, 2 configuration error,
3 degenerate ground state, 4 solver or quadrature failure.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import decay_report
from .config import load_config
from .errors import (ConfigurationError, DegenerateGroundStateError,
                     DomainError, NumericalError, SolverError)
from .groundstate import ground_state
from .hamiltonian import assemble
from .pullthrough import amplitude_bound, photon_amplitude, surrogate_from_model
from .verify import run_verify


def _fmt(x):
    return np.format_float_scientific(x, precision=16) if np.isfinite(x) else "nan"


def _write_manifest(path, cfg, extra):
    lines = [f"photontail.version = {__version__}"]
    lines += [f"config.{ln}" for ln in (cfg.raw_lines or ["<defaults>"])]
    lines += [f"{k} = {v}" for k, v in extra.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _prepare(cfg, require_unique):
    model = assemble(cfg.model_config(require_unique=require_unique))
    gs = ground_state(model, tol=cfg.solver_tol, seed=cfg.seed,
                      dense_threshold=cfg.dense_threshold)
    return model, gs


def cmd_ground(cfg, out):
    model, gs = _prepare(cfg, require_unique=False)
    out.mkdir(parents=True, exist_ok=True)
    _write_manifest(out / "manifest.txt", cfg, {
        "dimension": model.dim,
        "energy": _fmt(gs.E),
        "gap": _fmt(gs.gap),
        "residual": _fmt(gs.residual),
        "phase_convention": gs.phase_convention,
    })
    n_spin = model.n_spin
    with open(out / "ground_state.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("index,occupation,spin_index,re,im\n")
        for i, amp in enumerate(gs.U):
            fi, si = divmod(i, n_spin)
            fh.write(f"{i},{model.basis.occupation_string(fi)},{si},"
                     f"{_fmt(amp.real)},{_fmt(amp.imag)}\n")
    print(f"E = {gs.E:.12g}  gap = {gs.gap:.6g}  dim = {model.dim}")
    print(f"wrote {out / 'manifest.txt'} and {out / 'ground_state.csv'}")
    return 0


def _amplitude_rows(surrogate, ks):
    for k in ks:
        amp = photon_amplitude(surrogate, k)
        yield k, amp.norm(), amplitude_bound(surrogate, k)


def cmd_amplitude(cfg, out, k_text, k_file):
    if k_text is None and k_file is None:
        raise ConfigurationError("amplitude needs --k or --k-file")
    ks = []
    if k_text is not None:
        ks.append(np.array([float(p) for p in k_text.split(",")]))
    if k_file is not None:
        for line in Path(k_file).read_text(encoding="utf-8").splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                ks.append(np.array([float(p) for p in line.replace(",", " ").split()]))
    for k in ks:
        if k.shape != (3,):
            raise ConfigurationError(f"k must have three components, got {k}")

    model, gs = _prepare(cfg, require_unique=True)
    surrogate = surrogate_from_model(model, gs,
                                     dense_threshold=cfg.dense_threshold,
                                     solver_tol=cfg.solver_tol)
    rows = list(_amplitude_rows(surrogate, ks))
    for k, nrm, bound in rows:
        print(f"k = ({k[0]:.6g}, {k[1]:.6g}, {k[2]:.6g})  "
              f"|a(k)U| = {nrm:.10e}  bound = {bound:.10e}")
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "amplitude.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("kx,ky,kz,norm,bound\n")
            for k, nrm, bound in rows:
                fh.write(",".join(_fmt(v) for v in (*k, nrm, bound)) + "\n")
        print(f"wrote {out / 'amplitude.csv'}")
    return 0


def cmd_asymptotics(cfg, out):
    model, gs = _prepare(cfg, require_unique=True)
    surrogate = surrogate_from_model(model, gs,
                                     dense_threshold=cfg.dense_threshold,
                                     solver_tol=cfg.solver_tol)
    kind, dir_arg = cfg.directions
    directions = None if kind == "auto" else dir_arg
    n_random = dir_arg if kind == "auto" else 0
    report = decay_report(
        surrogate, directions=directions, radii=cfg.radii, seed=cfg.seed,
        ahat_max_radius=cfg.ahat_max_radius, kappa=cfg.kappa_value(),
        n_random=n_random,
    )
    out.mkdir(parents=True, exist_ok=True)
    write_decay_csv(report, out / "decay.csv")
    write_limit_csv(report, out / "limit.csv")
    _write_manifest(out / "manifest.txt", cfg, {
        "dimension": model.dim,
        "energy": _fmt(gs.E),
        "gap": _fmt(gs.gap),
        "kappa_used": _fmt(report.kappa_used),
        "kappa_measured": _fmt(report.kappa_measured),
        "spin_vector": ",".join(_fmt(v) for v in report.spin_vector),
        "slope_b": ",".join(_fmt(v) for v in report.slope_b),
        "slope_err": ",".join(_fmt(v) for v in report.slope_err),
        "non_asymptotic": report.non_asymptotic,
    })
    print(f"kappa_measured = {report.kappa_measured:.8g} "
          f"(candidates: {report.kappa_candidates})")
    print(f"wrote decay.csv, limit.csv, manifest.txt under {out}")
    return 0


def write_decay_csv(report, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("radius,dir_index,norm_ahat,norm_b,scaled_norm_b,err_lemma_product\n")
        for d in range(len(report.directions)):
            for i, r in enumerate(report.radii):
                fh.write(",".join([
                    _fmt(r), str(d), _fmt(report.norm_ahat[d, i]),
                    _fmt(report.norm_b[d, i]), _fmt(report.scaled_norm_b[d, i]),
                    _fmt(report.err_product[d, i]),
                ]) + "\n")


def write_limit_csv(report, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("dir_index,label,vx,vy,vz,cross_norm,limit_norm,"
                 "L_re_1,L_im_1,L_re_2,L_im_2,L_re_3,L_im_3,"
                 "kappa_measured,pred_rel_diff,pred_cosine\n")
        for d, v in enumerate(report.directions):
            c = report.limit_coeff[d]
            fh.write(",".join([
                str(d), report.labels[d],
                *(_fmt(x) for x in v),
                _fmt(report.cross_norm[d]), _fmt(report.limit_norm[d]),
                *(t for pair in ((_fmt(ci.real), _fmt(ci.imag)) for ci in c)
                  for t in pair),
                _fmt(report.kappa_measured_dir[d]),
                _fmt(report.pred_rel_diff[d]), _fmt(report.pred_cosine[d]),
            ]) + "\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="photontail",
        description="Ground-state photon amplitudes and their spatial tail "
                    "for a spin-boson NMR Hamiltonian.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("ground", "amplitude", "asymptotics", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="key = value config file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        if name == "amplitude":
            p.add_argument("--k", default=None, help="photon momentum kx,ky,kz")
            p.add_argument("--k-file", default=None,
                           help="file with one k per line (three floats)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        out = Path(args.out) if args.out is not None else Path(cfg.out_dir)
        if args.command == "ground":
            return cmd_ground(cfg, out)
        if args.command == "amplitude":
            return cmd_amplitude(cfg, out if args.out is not None else None,
                                 args.k, args.k_file)
        if args.command == "asymptotics":
            return cmd_asymptotics(cfg, out)
        if args.command == "verify":
            failures = run_verify(cfg)
            return 1 if failures else 0
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except DegenerateGroundStateError as exc:
        print(f"degenerate ground state: {exc}", file=sys.stderr)
        return 3
    except (SolverError, NumericalError, DomainError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
