"""Central tolerance and grid configuration.

All numeric thresholds used by the library live in one record so that a
single TOML file can retune them; defaults match the values stated in the
operation contracts.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace, asdict

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover - py310 path
    import tomli as tomllib


@dataclass(frozen=True)
class Tolerances:
    # matrix structure checks
    sym: float = 1e-10          # absolute symmetry defect
    symp: float = 1e-9          # |S^T J S - J|_inf
    unitary: float = 1e-9       # unitarity defect of w
    det_one: float = 1e-7       # |det S - 1|
    # rank / degeneracy thresholds
    rank_rel: float = 1e-8      # eigenvalue threshold, relative to |M|
    det_si: float = 1e-10       # |det(S - I)| degeneracy cutoff
    free_b: float = 1e-10       # |det B| cutoff for freeness
    # phase machinery
    phase_mod: float = 1e-9     # | |sample| - 1 |
    phase_fit: float = 1e-8     # |exp(i theta) - sample|
    branch_cut: float = 1e-6    # eigenvalue distance to the negative axis
    integer: float = 1e-6       # integrality assertion window
    # lagrangian machinery
    transversal_margin: float = 1e-3   # auxiliary-plane admission margin
    aux_draws: int = 64                # auxiliary-plane retry budget
    max_path_samples: int = 4096       # dyadic refinement cap
    # grids
    nyquist_frac: float = 0.85  # usable fraction of the Nyquist band
    tail_mass: float = 1e-8     # truncation certificate for Bochner sums


@dataclass(frozen=True)
class GridConfig:
    """Default grid geometry for the n=1 operator suites.

    The Z grid shares the X step so window translates stay on-grid; its
    512 points per axis put the boundary ~17 sigma away from every state
    in the standard battery.
    """

    n: int = 1
    points_x: int = 256
    halfwidth_x: float = 10.0
    points_z: int = 512

    @property
    def step(self) -> float:
        return 2.0 * self.halfwidth_x / self.points_x

    @property
    def halfwidth_z(self) -> float:
        return 0.5 * self.points_z * self.step


@dataclass(frozen=True)
class Config:
    tol: Tolerances = field(default_factory=Tolerances)
    grid: GridConfig = field(default_factory=GridConfig)
    seed: int = 20260810
    workers: int = 1

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT = Config()


def _env_workers() -> int | None:
    raw = os.environ.get("PHASEWEYL_WORKERS")
    if raw is None:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        return None


def load_config(path: str | None = None, seed: int | None = None) -> Config:
    """Build a Config from an optional TOML file plus overrides.

    Recognized tables: ``[tol]``, ``[grid]`` and top-level ``seed`` /
    ``workers``. Unknown keys raise, so typos do not silently fall back
    to defaults.
    """
    cfg = DEFAULT
    if path is not None:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
        tol_kw = raw.pop("tol", {})
        grid_kw = raw.pop("grid", {})
        top = {}
        for key in ("seed", "workers"):
            if key in raw:
                top[key] = raw.pop(key)
        if raw:
            raise ValueError(f"unknown config keys: {sorted(raw)}")
        unknown = set(tol_kw) - set(Tolerances.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown [tol] keys: {sorted(unknown)}")
        unknown = set(grid_kw) - set(GridConfig.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown [grid] keys: {sorted(unknown)}")
        cfg = replace(
            cfg,
            tol=replace(cfg.tol, **tol_kw),
            grid=replace(cfg.grid, **grid_kw),
            **top,
        )
    env_w = _env_workers()
    if env_w is not None:
        cfg = replace(cfg, workers=env_w)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    return cfg
