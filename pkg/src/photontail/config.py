"""Flat key = value run configuration.

UTF-8 text, one `key = value` pair per line, `#` starts a comment.  Unknown
keys are rejected; every line is echoed verbatim into output manifests so a
run can be reproduced from its artifacts.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .hamiltonian import ModelConfig
from .modes import CutoffFunction, build_mode_grid


def _parse_vec3(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ConfigurationError(f"expected three comma-separated floats, got {text!r}")
    return np.array([float(p) for p in parts])


def _parse_positions(text):
    return np.array([_parse_vec3(chunk) for chunk in text.split(";") if chunk.strip()])


def _parse_radii(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigurationError(
            f"radii spec must be min:max:count, got {text!r}"
        )
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if lo <= 0 or hi <= lo or count < 2:
        raise ConfigurationError(f"bad radii spec {text!r}")
    return np.logspace(np.log10(lo), np.log10(hi), count)


def _parse_directions(text):
    text = text.strip()
    if text.startswith("auto"):
        n_random = 4
        if ":" in text:
            n_random = int(text.split(":", 1)[1])
        return ("auto", n_random)
    return ("explicit", np.array([_parse_vec3(c) for c in text.split(";") if c.strip()]))


@dataclass
class RunConfig:
    n_radial: int = 6
    angular_order: int = 6
    k_max: float = 6.0
    chi_family: str = "gaussian"
    chi_amplitude: float = 1.0
    chi_scale: float = 1.0
    n_max: int = 2
    n_particles: int = 1
    positions: np.ndarray = field(default_factory=lambda: np.zeros((1, 3)))
    bext: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    g: float = 0.1
    solver_tol: float = 1e-10
    dense_threshold: int = 2000
    radii: np.ndarray = field(default_factory=lambda: np.logspace(0, 4, 20))
    directions: tuple = ("auto", 4)
    kappa: object = "oracle"
    ahat_max_radius: float = 1e3
    seed: int = 1234
    out_dir: str = "out"
    raw_lines: list = field(default_factory=list)

    def cutoff(self):
        return CutoffFunction(self.chi_family, self.chi_amplitude, self.chi_scale)

    def mode_grid(self):
        return build_mode_grid(self.n_radial, self.angular_order, self.k_max)

    def model_config(self, require_unique=False):
        if self.positions.shape[0] != self.n_particles:
            raise ConfigurationError(
                f"spins.P = {self.n_particles} but {self.positions.shape[0]} "
                "positions were given"
            )
        return ModelConfig(
            g=self.g, bext=self.bext, positions=self.positions,
            chi=self.cutoff(), grid=self.mode_grid(), n_max=self.n_max,
            require_unique=require_unique,
        )

    def kappa_value(self):
        if self.kappa == "oracle":
            return None  # downstream default: contour-limit oracle
        return float(self.kappa)


_SETTERS = {
    "modes.n_radial": ("n_radial", int),
    "modes.angular_order": ("angular_order", int),
    "modes.k_max": ("k_max", float),
    "chi.family": ("chi_family", str),
    "chi.amplitude": ("chi_amplitude", float),
    "chi.scale": ("chi_scale", float),
    "fock.n_max": ("n_max", int),
    "spins.P": ("n_particles", int),
    "spins.positions": ("positions", _parse_positions),
    "field.bext": ("bext", _parse_vec3),
    "coupling.g": ("g", float),
    "solver.tol": ("solver_tol", float),
    "solver.dense_threshold": ("dense_threshold", int),
    "asym.radii": ("radii", _parse_radii),
    "asym.directions": ("directions", _parse_directions),
    "asym.kappa": ("kappa", lambda s: s if s == "oracle" else float(s)),
    "asym.ahat_max_radius": ("ahat_max_radius", float),
    "seed": ("seed", int),
    "out": ("out_dir", str),
}


def parse_config_text(text):
    cfg = RunConfig()
    cfg.raw_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        setter = _SETTERS.get(key)
        if setter is None:
            raise ConfigurationError(f"line {lineno}: unknown config key {key!r}")
        attr, convert = setter
        try:
            setattr(cfg, attr, convert(value))
        except ConfigurationError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(
                f"line {lineno}: bad value for {key}: {exc}"
            ) from exc
        cfg.raw_lines.append(line)
    return cfg


def load_config(path=None):
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)
