"""Uniform-grid sampled functions on X = R^n and on phase space Z = R^{2n},
plus the oscillatory-sum primitive every transform in the package reduces to.

The workhorse is `grid_ft`, the quadrature sum

    G_k = step_in * sum_j f_j exp(sign * i * u_k * t_j)

evaluated for arbitrary centered input/output grids through the chirp-z
(Bluestein) factorization, so no transform ever forces a specific grid
geometry. Its accuracy as an integral is governed by the usual Nyquist
budget, which the operator layers check against their chirp gradients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.signal import czt

from .config import DEFAULT, GridConfig
from .errors import CommensurabilityError, DimensionError

__all__ = [
    "Axis",
    "GridFunctionX",
    "GridFunctionZ",
    "WindowState",
    "grid_ft",
    "standard_axes",
    "gaussian_ground_state",
    "coherent_state",
    "hermite_state",
    "random_state_battery",
    "write_grid",
    "read_grid",
]


@dataclass(frozen=True)
class Axis:
    """Centered uniform grid: points center - halfwidth + j*step, j < N."""

    center: float
    halfwidth: float
    points: int

    def __post_init__(self):
        if self.points < 2 or self.points & (self.points - 1):
            raise DimensionError(f"axis points must be a power of two, got {self.points}")

    @property
    def step(self) -> float:
        return 2.0 * self.halfwidth / self.points

    def grid(self) -> np.ndarray:
        return self.center - self.halfwidth + self.step * np.arange(self.points)

    @property
    def nyquist(self) -> float:
        return np.pi / self.step

    def index_of(self, value: float, tol_frac: float = 1e-6) -> int:
        """Nearest grid index; CommensurabilityError when the snap is off-grid."""
        raw = (value - self.center + self.halfwidth) / self.step
        idx = int(round(raw))
        snap = abs(raw - idx) * self.step
        if snap > tol_frac * self.step:
            raise CommensurabilityError(
                f"value {value} snaps to grid with error {snap:.3e}"
            )
        return idx

    def shift_steps(self, value: float, tol_frac: float = 1e-6) -> int:
        """Signed number of grid steps represented by ``value``."""
        raw = value / self.step
        k = int(round(raw))
        snap = abs(raw - k) * self.step
        if snap > tol_frac * self.step:
            raise CommensurabilityError(
                f"shift {value} is {snap:.3e} away from a grid multiple"
            )
        return k


def grid_ft(
    values: np.ndarray,
    axis_in: Axis,
    axis_out: Axis,
    sign: int = -1,
    axis: int = -1,
) -> np.ndarray:
    """Oscillatory quadrature sum along one array axis (see module docstring).

    Exact (to FFT round-off) for any pair of centered grids; cost
    O((M+K) log(M+K)) through Bluestein.
    """
    t = axis_in.grid()
    u = axis_out.grid()
    M, K = t.size, u.size
    values = np.moveaxis(np.asarray(values, dtype=complex), axis, -1)
    if values.shape[-1] != M:
        raise DimensionError("values incompatible with input axis")
    s = 1j * sign
    # exp(s u_k t_j) = exp(s t0 u_k) * a^{-j} * w^{jk} with the czt kernel
    # X_k = sum_j x_j a^{-j} w^{jk}
    t0, dt = t[0], axis_in.step
    u0, du = u[0], axis_out.step
    w = complex(np.exp(s * dt * du))
    a = complex(np.exp(-s * u0 * dt))
    out = czt(values, m=K, w=w, a=a, axis=-1)
    out = out * (axis_in.step * np.exp(s * t0 * u))
    return np.moveaxis(out, -1, axis)


@dataclass
class GridFunctionX:
    """Complex samples of a function on R^n over a tensor grid (n <= 2 in
    practice; every axis carries its own geometry)."""

    axes: tuple[Axis, ...]
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        shape = tuple(ax.points for ax in self.axes)
        if self.values.shape != shape:
            raise DimensionError(f"values shape {self.values.shape} != grid {shape}")
        if not np.all(np.isfinite(self.values)):
            raise DimensionError("grid function holds non-finite values")

    @property
    def n(self) -> int:
        return len(self.axes)

    def cell(self) -> float:
        return float(np.prod([ax.step for ax in self.axes]))

    def inner(self, other: "GridFunctionX") -> complex:
        return complex(np.sum(self.values * np.conj(other.values)) * self.cell())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.cell()))

    def with_values(self, values: np.ndarray) -> "GridFunctionX":
        return type(self)(self.axes, values)

    def meshes(self) -> list[np.ndarray]:
        return list(np.meshgrid(*[ax.grid() for ax in self.axes], indexing="ij"))


class GridFunctionZ(GridFunctionX):
    """Samples on phase space Z = R^{2n}; axes ordered (x_1..x_n, p_1..p_n)."""

    @property
    def n(self) -> int:
        if len(self.axes) % 2:
            raise DimensionError("phase-space grid needs an even number of axes")
        return len(self.axes) // 2


@dataclass(frozen=True)
class WindowState:
    """Unit-norm window function on X."""

    phi: GridFunctionX

    def __post_init__(self):
        nrm = self.phi.norm()
        if abs(nrm - 1.0) > 1e-8:
            raise DimensionError(f"window norm {nrm} != 1")


# ---------------------------------------------------------------------------
# standard grids and states


def standard_axes(cfg: GridConfig = DEFAULT.grid) -> tuple[tuple[Axis, ...], tuple[Axis, ...]]:
    """(X axes, Z axes) for the configured geometry; the Z grid shares the X
    step so phase-space translations by X-grid amounts stay exact."""
    ax = Axis(0.0, cfg.halfwidth_x, cfg.points_x)
    az = Axis(0.0, cfg.halfwidth_z, cfg.points_z)
    return (ax,) * cfg.n, (az,) * (2 * cfg.n)


def gaussian_ground_state(axes: tuple[Axis, ...]) -> GridFunctionX:
    """phi_0(x) = pi^{-n/4} exp(-|x|^2/2)."""
    n = len(axes)
    mesh = np.meshgrid(*[ax.grid() for ax in axes], indexing="ij")
    r2 = sum(m**2 for m in mesh)
    return GridFunctionX(axes, np.pi ** (-n / 4.0) * np.exp(-0.5 * r2))


def coherent_state(axes: tuple[Axis, ...], x0: np.ndarray, p0: np.ndarray) -> GridFunctionX:
    """T-hat(z0) phi_0: Gaussian at x0 with momentum p0 and the symmetric
    phase convention exp(i(<p0,x> - <p0,x0>/2))."""
    n = len(axes)
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    mesh = np.meshgrid(*[ax.grid() for ax in axes], indexing="ij")
    r2 = sum((m - c) ** 2 for m, c in zip(mesh, x0))
    phase = sum(p * (m - 0.5 * c) for p, m, c in zip(p0, mesh, x0))
    return GridFunctionX(axes, np.pi ** (-n / 4.0) * np.exp(-0.5 * r2 + 1j * phase))


def hermite_state(axes: tuple[Axis, ...], k: int = 1) -> GridFunctionX:
    """k-th 1-d Hermite eigenstate (n = 1 only)."""
    if len(axes) != 1:
        raise DimensionError("hermite_state is 1-d")
    from numpy.polynomial.hermite import hermval

    x = axes[0].grid()
    coeff = np.zeros(k + 1)
    coeff[k] = 1.0
    import math

    norm = (2.0**k * math.factorial(k)) ** -0.5 * np.pi**-0.25
    return GridFunctionX(axes, norm * hermval(x, coeff) * np.exp(-0.5 * x * x))


def random_state_battery(
    axes: tuple[Axis, ...],
    rng: np.random.Generator,
    count: int = 16,
    max_center: float = 2.5,
    terms: int = 3,
) -> list[GridFunctionX]:
    """Normalized pseudo-random superpositions of coherent states, centers
    inside |x0|, |p0| <= max_center; the standard battery for operator
    identity tests."""
    n = len(axes)
    out = []
    for _ in range(count):
        vals = 0.0
        for _ in range(terms):
            z0 = rng.uniform(-max_center, max_center, size=2 * n)
            c = rng.standard_normal() + 1j * rng.standard_normal()
            vals = vals + c * coherent_state(axes, z0[:n], z0[n:]).values
        f = GridFunctionX(axes, vals)
        out.append(f.with_values(f.values / f.norm()))
    return out


# ---------------------------------------------------------------------------
# binary grid format: little-endian complex128 pairs + JSON sidecar


def write_grid(fn: GridFunctionX, path: str | Path) -> None:
    path = Path(path)
    flat = np.ascontiguousarray(fn.values, dtype="<c16")
    path.write_bytes(flat.tobytes())
    sidecar = {
        "kind": "GridFunctionZ" if isinstance(fn, GridFunctionZ) else "GridFunctionX",
        "axes": [
            {"center": ax.center, "halfwidth": ax.halfwidth, "points": ax.points}
            for ax in fn.axes
        ],
    }
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(sidecar, indent=1))


def read_grid(path: str | Path) -> GridFunctionX:
    path = Path(path)
    sidecar = json.loads(path.with_suffix(path.suffix + ".json").read_text())
    axes = tuple(
        Axis(a["center"], a["halfwidth"], a["points"]) for a in sidecar["axes"]
    )
    shape = tuple(ax.points for ax in axes)
    values = np.frombuffer(path.read_bytes(), dtype="<c16").reshape(shape)
    cls = GridFunctionZ if sidecar.get("kind") == "GridFunctionZ" else GridFunctionX
    return cls(axes, values.copy())
