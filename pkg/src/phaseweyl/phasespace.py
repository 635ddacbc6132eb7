"""Phase-space Weyl calculus: Wigner--Moyal transform, the windowed
isometries U_phi, the modified Heisenberg--Weyl operators T_ph and the
operators A_ph they generate, plus the intertwining / covariance residual
checks.

The U_phi operator is applied through its windowed-transform form

    U_phi f(x, p) = (2 pi)^{-n/2} exp(i<p,x>/2)
                    Int exp(-i<p,x'>) phi(x - x') f(x') dx',

which is the rescaled Wigner--Moyal definition (pi/2)^{n/2} W(f, conj phi)(z/2)
written out; it evaluates exactly on Z grids sharing the X step, with no
interpolation anywhere. Consistency of the two forms is itself a test.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT
from .errors import CommensurabilityError, DimensionError, DomainSizeError
from .grids import (
    Axis,
    GridFunctionX,
    GridFunctionZ,
    WindowState,
    grid_ft,
)
from .metaplectic import PrimitiveWord, QFTWord

__all__ = [
    "symplectic_fourier",
    "wigner_moyal",
    "wigner_pointwise",
    "u_phi",
    "u_phi_pointwise",
    "u_phi_adjoint",
    "t_ph",
    "t_ph_heisenberg",
    "heisenberg_weyl",
    "zhat_ph_apply",
    "a_ph_apply",
    "twisted_convolution_grid",
    "a_ph_mult_x",
    "harmonic_oscillator_ph",
    "harmonic_oscillator_x",
    "harmonic_oscillator_via_zhat",
    "cr_condition_residual",
    "s_ph_apply",
    "metaplectic_covariance_residual",
    "window_transform_rule_residual",
    "fourier_interpolate",
]


# ---------------------------------------------------------------------------
# basic transforms


def symplectic_fourier(F: GridFunctionZ) -> GridFunctionZ:
    """F_sigma a(z) = (2 pi)^{-n} Int exp(-i sigma(z,z')) a(z') dz'.

    sigma(z, z') = <p, x'> - <p', x>, so the kernel separates into a forward
    transform (x' against the output p) and a backward one (p' against the
    output x); each axis is one Bluestein pass landing on the same grid.
    Involutive with this normalization.
    """
    n = F.n
    vals = F.values
    for a in range(n):
        vals = grid_ft(vals, F.axes[a], F.axes[n + a], sign=-1, axis=a)
    for a in range(n):
        vals = grid_ft(vals, F.axes[n + a], F.axes[a], sign=+1, axis=n + a)
    # axis a now carries p_a and axis n+a carries x_a; swap back
    perm = list(range(2 * n))
    for a in range(n):
        perm[a], perm[n + a] = perm[n + a], perm[a]
    vals = np.transpose(vals, perm) * (2.0 * np.pi) ** (-n)
    return F.with_values(vals)


def _half_shift_rows(
    f: GridFunctionX, g: GridFunctionX, x_out: np.ndarray
) -> tuple[np.ndarray, Axis, np.ndarray]:
    """Integrand rows f(x + y/2) conj(g)(x - y/2) for every requested output
    abscissa. x + y/2 must land on the X grid, which forces the y lattice to
    match the parity of x relative to the grid; rows are built per parity
    class on the appropriate shifted y lattice. Returns (rows, y-axis,
    class id per row) with the two classes sharing the y step.
    """
    ax = f.axes[0]
    x0 = ax.grid()[0]
    step = ax.step
    rel = (x_out - x0) / step
    even = np.abs(rel - np.rint(rel)) < 1e-9
    odd = np.abs(rel - np.rint(rel - 0.5) - 0.5) < 1e-9
    if not np.all(even | odd):
        raise CommensurabilityError("output abscissae are not on the half-step lattice")
    ycount = 2 * ax.points
    rows = np.zeros((x_out.size, ycount), dtype=complex)
    gv = np.conj(g.values)
    cls = np.where(even, 0, 1)
    axes_y = []
    for c, offset in ((0, 0.0), (1, step)):
        yaxis = Axis(offset, ycount * step, ycount)  # step 2*step, centered
        axes_y.append(yaxis)
        mask = cls == c
        if not mask.any():
            continue
        y = yaxis.grid()
        xs = x_out[mask]
        ip = np.rint((xs[:, None] + 0.5 * y[None, :] - x0) / step)
        im = np.rint((xs[:, None] - 0.5 * y[None, :] - x0) / step)
        snap = np.abs(xs[:, None] + 0.5 * y[None, :] - (x0 + ip * step)).max()
        if snap > 1e-9 * step:
            raise CommensurabilityError(f"half-shift off-grid by {snap:.3e}")
        ok = (ip >= 0) & (ip < ax.points) & (im >= 0) & (im < ax.points)
        ipc = np.clip(ip.astype(int), 0, ax.points - 1)
        imc = np.clip(im.astype(int), 0, ax.points - 1)
        rows[mask] = np.where(ok, f.values[ipc] * gv[imc], 0.0)
    return rows, axes_y, cls


def wigner_moyal(
    f: GridFunctionX,
    g: GridFunctionX,
    axes_out: tuple[Axis, ...],
    half_arguments: bool = False,
) -> GridFunctionZ:
    """W(f, g)(x, p) = (2 pi)^{-n} Int exp(-i<p,y>) f(x + y/2) conj(g)(x - y/2) dy
    sampled on ``axes_out`` (x axis, p axis). With half_arguments=True the
    map z -> W(f, g)(z/2) is produced instead (the rescaling U_phi sits on).

    Evaluation is interpolation-free: the y lattice has twice the X step
    (shifted by one step for output points on the half-lattice), so the
    half-shifted factors are exact grid lookups, and each row is a single
    Bluestein pass y -> p.
    """
    if f.n != 1 or g.n != 1:
        raise DimensionError("Wigner-Moyal grid transform is 1-d; use wigner_pointwise")
    if g.axes != f.axes:
        raise DimensionError("Wigner-Moyal needs a common grid")
    scale = 0.5 if half_arguments else 1.0
    x_out = axes_out[0].grid() * scale
    rows, axes_y, cls = _half_shift_rows(f, g, x_out)
    p_axis = axes_out[1]
    eff_p = Axis(p_axis.center * scale, p_axis.halfwidth * scale, p_axis.points)
    out = np.zeros((x_out.size, p_axis.points), dtype=complex)
    for c in (0, 1):
        mask = cls == c
        if mask.any():
            out[mask] = grid_ft(rows[mask], axes_y[c], eff_p, sign=-1, axis=1)
    out = out / (2.0 * np.pi)
    return GridFunctionZ(tuple(axes_out), out)


def fourier_interpolate(f: GridFunctionX, points: np.ndarray) -> np.ndarray:
    """Band-limited evaluation of a 1-d grid function at arbitrary points
    through its discrete spectrum (trigonometric interpolation)."""
    if f.n != 1:
        raise DimensionError("fourier_interpolate is 1-d")
    ax = f.axes[0]
    N = ax.points
    spec = np.fft.fft(f.values)
    freqs = 2.0 * np.pi * np.fft.fftfreq(N, d=ax.step)
    pts = np.asarray(points, dtype=float) - ax.grid()[0]
    phases = np.exp(1j * pts[:, None] * freqs[None, :])
    return phases @ spec / N


def wigner_pointwise(
    f: GridFunctionX, g: GridFunctionX, points: np.ndarray
) -> np.ndarray:
    """W(f, g) at arbitrary phase-space points (shape (k, 2)), via
    trigonometric interpolation of the half-shifted factors. 1-d."""
    ax = f.axes[0]
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    ystep = 2.0 * ax.step
    ycount = 2 * ax.points
    y = (np.arange(ycount) - ycount // 2) * ystep
    out = np.zeros(pts.shape[0], dtype=complex)
    chunk = 128
    for s in range(0, pts.shape[0], chunk):
        xs = pts[s : s + chunk, 0]
        ps = pts[s : s + chunk, 1]
        args_p = (xs[:, None] + 0.5 * y[None, :]).ravel()
        args_m = (xs[:, None] - 0.5 * y[None, :]).ravel()
        fa = fourier_interpolate(f, args_p).reshape(xs.size, ycount)
        gb = fourier_interpolate(g, args_m).reshape(xs.size, ycount)
        # the periodic interpolant wraps; kill contributions from outside the box
        inside = (np.abs(args_p) <= ax.halfwidth).reshape(xs.size, ycount) & (
            np.abs(args_m) <= ax.halfwidth
        ).reshape(xs.size, ycount)
        integrand = np.where(inside, fa * np.conj(gb), 0.0) * np.exp(
            -1j * ps[:, None] * y[None, :]
        )
        out[s : s + chunk] = integrand.sum(axis=1) * ystep / (2.0 * np.pi)
    return out


# ---------------------------------------------------------------------------
# the isometries U_phi


def _check_z_axes(axes_z, ax_x: Axis):
    for az in axes_z:
        if abs(az.step - ax_x.step) > 1e-12 * ax_x.step:
            raise DimensionError("Z grid must share the X step")


def _window_matrix(phi: GridFunctionX, zx: np.ndarray, conjugate: bool) -> np.ndarray:
    """phi(zx_q - x_j) as a (q, j) lookup table (zero outside the X box)."""
    ax = phi.axes[0]
    x = ax.grid()
    steps = np.rint((zx[:, None] - x[None, :] - x[0]) / ax.step)
    snap = np.abs(zx[:, None] - x[None, :] - (x[0] + steps * ax.step)).max()
    if snap > 1e-9 * ax.step:
        raise CommensurabilityError("Z grid is not commensurate with the X grid")
    idx = steps.astype(int)
    ok = (idx >= 0) & (idx < ax.points)
    vals = phi.values[np.clip(idx, 0, ax.points - 1)]
    if conjugate:
        vals = np.conj(vals)
    return np.where(ok, vals, 0.0)


def u_phi(
    f: GridFunctionX, window: WindowState, axes_z: tuple[Axis, ...]
) -> GridFunctionZ:
    """U_phi f(z) = (pi/2)^{n/2} W(f, conj phi)(z/2) on the Z grid, applied
    in the windowed-transform form (module docstring)."""
    if f.n != 1:
        raise DimensionError("u_phi grid transform is 1-d")
    ax = f.axes[0]
    phi = window.phi
    if phi.axes != f.axes:
        raise DimensionError("window and state live on different grids")
    _check_z_axes(axes_z, ax)
    zx = axes_z[0].grid()
    win = _window_matrix(phi, zx, conjugate=False)
    rows = win * f.values[None, :]
    out = grid_ft(rows, ax, axes_z[1], sign=-1, axis=1)
    out = out * (2.0 * np.pi) ** -0.5
    out = out * np.exp(0.5j * zx[:, None] * axes_z[1].grid()[None, :])
    return GridFunctionZ(tuple(axes_z), out)


def u_phi_pointwise(
    f: GridFunctionX, window: WindowState, points: np.ndarray
) -> np.ndarray:
    """U_phi f at arbitrary phase-space points (k, 2); the window factor is
    evaluated by trigonometric interpolation."""
    ax = f.axes[0]
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    xp = ax.grid()
    out = np.zeros(pts.shape[0], dtype=complex)
    chunk = 256
    for s in range(0, pts.shape[0], chunk):
        xs = pts[s : s + chunk, 0]
        ps = pts[s : s + chunk, 1]
        args = (xs[:, None] - xp[None, :]).ravel()
        win = fourier_interpolate(window.phi, args).reshape(xs.size, xp.size)
        win = np.where(
            np.abs(args).reshape(xs.size, xp.size) > ax.halfwidth, 0.0, win
        )
        kern = np.exp(-1j * ps[:, None] * xp[None, :]) * win * f.values[None, :]
        out[s : s + chunk] = (
            kern.sum(axis=1) * ax.step * (2.0 * np.pi) ** -0.5 * np.exp(0.5j * xs * ps)
        )
    return out


def u_phi_adjoint(
    F: GridFunctionZ, window: WindowState, axes_x: tuple[Axis, ...]
) -> GridFunctionX:
    """Exact discrete adjoint of u_phi with respect to the grid inner
    products: <U f, F>_Z = <f, U* F>_X to round-off.

        (U* F)(x) = (2 pi)^{-1/2} step_zx Sum_q conj(phi(zx_q - x))
                    * Sum_r F[q, r] exp(-i zx_q zp_r / 2) exp(i zp_r x) step_zp,

    the inner sum being one batched Bluestein pass onto the X grid.
    """
    ax = axes_x[0]
    phi = window.phi
    _check_z_axes(F.axes, ax)
    zx_axis, zp_axis = F.axes
    zx = zx_axis.grid()
    vals = F.values * np.exp(-0.5j * zx[:, None] * zp_axis.grid()[None, :])
    rows = grid_ft(vals, zp_axis, ax, sign=+1, axis=1)
    win = _window_matrix(phi, zx, conjugate=True)
    out = (win * rows).sum(axis=0) * zx_axis.step * (2.0 * np.pi) ** -0.5
    return GridFunctionX(tuple(axes_x), out)


# ---------------------------------------------------------------------------
# Heisenberg machinery


def _sigma_phase(axes, z0: np.ndarray) -> np.ndarray:
    """sigma(z, z0) on the grid: <p, x0> - <p0, x>."""
    n = len(axes) // 2
    mesh = np.meshgrid(*[ax.grid() for ax in axes], indexing="ij")
    out = 0.0
    for a in range(n):
        out = out + mesh[n + a] * z0[a] - z0[n + a] * mesh[a]
    return out


def t_ph(z0: np.ndarray, F: GridFunctionZ, tol_frac: float = 1e-6) -> GridFunctionZ:
    """T_ph(z0) F(z) = exp(-i sigma(z, z0)/2) F(z - z0); z0 snaps to the
    grid (CommensurabilityError beyond tol_frac of a step)."""
    z0 = np.atleast_1d(np.asarray(z0, dtype=float))
    if z0.size != 2 * F.n:
        raise DimensionError("z0 has the wrong dimension")
    shifts = [ax.shift_steps(z0[a], tol_frac) for a, ax in enumerate(F.axes)]
    vals = F.values
    for a, k in enumerate(shifts):
        vals = np.roll(vals, k, axis=a)
    phase = np.exp(-0.5j * _sigma_phase(F.axes, z0))
    return F.with_values(phase * vals)


def t_ph_heisenberg(
    z0: np.ndarray, t0: float, F: GridFunctionZ, tol_frac: float = 1e-6
) -> GridFunctionZ:
    """Heisenberg representation on phase space: exp(i t0) T_ph(z0)."""
    out = t_ph(z0, F, tol_frac)
    return out.with_values(np.exp(1j * t0) * out.values)


def heisenberg_weyl(
    z0: np.ndarray, t0: float, f: GridFunctionX, tol_frac: float = 1e-6
) -> GridFunctionX:
    """Schroedinger representation of the Heisenberg group:

        T(z0, t0) f(x) = exp(i(t0 + <p0,x> - <p0,x0>/2)) f(x - x0).

    The scalar phase is exp(+i t0): with exp(-i t0) the composition would
    realize the opposite-order group law and the intertwining with T_ph
    would pick up a stray exp(2 i t0).
    """
    z0 = np.atleast_1d(np.asarray(z0, dtype=float))
    n = f.n
    x0, p0 = z0[:n], z0[n:]
    shifts = [ax.shift_steps(x0[a], tol_frac) for a, ax in enumerate(f.axes)]
    vals = f.values
    for a, k in enumerate(shifts):
        vals = np.roll(vals, k, axis=a)
    mesh = f.meshes()
    phase = t0 - 0.5 * float(p0 @ x0)
    for a in range(n):
        phase = phase + p0[a] * mesh[a]
    return f.with_values(np.exp(1j * phase) * vals)


def _spectral_derivative(values: np.ndarray, axis_obj: Axis, axis: int) -> np.ndarray:
    N = axis_obj.points
    k = 2.0 * np.pi * np.fft.fftfreq(N, d=axis_obj.step)
    shape = [1] * values.ndim
    shape[axis] = N
    return np.fft.ifft(1j * k.reshape(shape) * np.fft.fft(values, axis=axis), axis=axis)


def zhat_ph_apply(kind: str, j: int, F: GridFunctionZ) -> GridFunctionZ:
    """Component of z_ph = (x/2 + i d_p, p/2 - i d_x): kind in {"x", "p"},
    j the coordinate index."""
    n = F.n
    mesh = F.meshes()
    if kind == "x":
        deriv = _spectral_derivative(F.values, F.axes[n + j], n + j)
        vals = 0.5 * mesh[j] * F.values + 1j * deriv
    elif kind == "p":
        deriv = _spectral_derivative(F.values, F.axes[j], j)
        vals = 0.5 * mesh[n + j] * F.values - 1j * deriv
    else:
        raise DimensionError(f"unknown component kind {kind!r}")
    return F.with_values(vals)


# ---------------------------------------------------------------------------
# phase-space Weyl operators


def _twisted_apply(a: GridFunctionZ, F: GridFunctionZ, tail) -> GridFunctionZ:
    """Shared implementation: (2 pi)^{-n} Int exp(i sigma(z,z')/2)
    a(z - z') F(z') dz', the twisted convolution. A_ph F is exactly this
    with the symbol on the left; so is the symbol composition law."""
    tol_tail = DEFAULT.tol.tail_mass if tail is None else tail
    if a.n != 1 or F.n != 1:
        raise DimensionError("twisted application is implemented for n = 1")
    if a.axes != F.axes:
        raise DimensionError("symbol and operand grids differ")
    ax_x, ax_p = F.axes
    cell = a.cell()
    vals_a = a.values
    # certificate: the symbol must decay inside the box
    border = max(
        float(np.abs(vals_a[0, :]).max()),
        float(np.abs(vals_a[-1, :]).max()),
        float(np.abs(vals_a[:, 0]).max()),
        float(np.abs(vals_a[:, -1]).max()),
    )
    peak = float(np.abs(vals_a).max())
    if peak > 0 and border / peak > np.sqrt(tol_tail):
        raise DomainSizeError(
            f"symbol does not decay inside the box (edge/peak {border / peak:.2e})"
        )
    # x0 rows worth keeping, by L1 mass
    row_mass = np.abs(vals_a).sum(axis=1)
    order = np.argsort(row_mass)[::-1]
    csum = np.cumsum(row_mass[order])
    keep = int(np.searchsorted(csum, (1.0 - tol_tail) * csum[-1])) + 1
    rows = np.sort(order[: min(keep, order.size)])

    x = ax_x.grid()
    p = ax_p.grid()
    Nx = ax_x.points
    out = np.zeros_like(F.values)
    mod = np.exp(0.5j * x[:, None] * p[None, :])  # e^{i x v / 2}, (x, v)
    for i0 in rows:
        k = i0 - Nx // 2          # x0 = k * step
        u = k * ax_x.step
        kern = vals_a[i0, :][None, :] * mod
        kern_hat = np.fft.fft(np.fft.ifftshift(kern, axes=1), axis=1)
        shifted = np.roll(F.values, k, axis=0)
        term = np.fft.ifft(np.fft.fft(shifted, axis=1) * kern_hat, axis=1)
        out += np.exp(-0.5j * p[None, :] * u) * term
    out = out * cell / (2.0 * np.pi)
    return F.with_values(out)


def a_ph_apply(
    a_sigma: GridFunctionZ, F: GridFunctionZ, tail: float | None = None
) -> GridFunctionZ:
    """A_ph F = (2 pi)^{-n} Int a_sigma(z0) T_ph(z0) F dz0 for a decaying
    sampled twisted symbol (support-truncated with a tail-mass certificate;
    one batched p-convolution per retained x0 row)."""
    return _twisted_apply(a_sigma, F, tail)


def twisted_convolution_grid(
    a: GridFunctionZ, b: GridFunctionZ, tail: float | None = None
) -> GridFunctionZ:
    """Twisted convolution of two sampled symbols; the composition law of
    twisted Weyl symbols (same integral as a_ph_apply with b as operand)."""
    return _twisted_apply(a, b, tail)


def a_ph_mult_x(a_values: np.ndarray, F: GridFunctionZ) -> GridFunctionZ:
    """A_ph for a multiplication symbol a(z) = a(x): the twisted symbol is
    a-hat(p0) delta(x0), so the operator reduces to one p-directed twisted
    convolution per x row,

        A_ph F(x, p) = (2 pi)^{-n} Int a-hat(p0) e^{i<p0,x>/2} F(x, p - p0) dp0,

    evaluated exactly (1-d)."""
    ax_x, ax_p = F.axes
    a_values = np.asarray(a_values, dtype=complex)
    if a_values.shape != (ax_x.points,):
        raise DimensionError("multiplication symbol must be sampled on the x axis")
    ahat = grid_ft(a_values, ax_x, ax_p, sign=-1)
    x = ax_x.grid()
    p = ax_p.grid()
    kern = ahat[None, :] * np.exp(0.5j * x[:, None] * p[None, :])
    kern_hat = np.fft.fft(np.fft.ifftshift(kern, axes=1), axis=1)
    conv = np.fft.ifft(np.fft.fft(F.values, axis=1) * kern_hat, axis=1)
    return F.with_values(conv * ax_p.step / (2.0 * np.pi))


def harmonic_oscillator_x(f: GridFunctionX) -> GridFunctionX:
    """Weyl operator of H = (|p|^2 + |x|^2)/2 on X: (-d_x^2 + x^2)/2."""
    mesh = f.meshes()
    vals = np.zeros_like(f.values)
    lap = np.zeros_like(f.values)
    for a, ax in enumerate(f.axes):
        lap = lap + _spectral_derivative(_spectral_derivative(f.values, ax, a), ax, a)
        vals = vals + mesh[a] ** 2 * f.values
    return f.with_values(0.5 * (vals - lap))


def harmonic_oscillator_ph(F: GridFunctionZ) -> GridFunctionZ:
    """H_ph = -d_z^2/2 - (i/2) sigma(z, d_z) + |z|^2/8 with
    sigma(z, d_z) = <p, d_x> - <x, d_p>."""
    n = F.n
    mesh = F.meshes()
    lap = np.zeros_like(F.values)
    sig = np.zeros_like(F.values)
    r2 = 0.0
    for a in range(2 * n):
        lap = lap + _spectral_derivative(
            _spectral_derivative(F.values, F.axes[a], a), F.axes[a], a
        )
        r2 = r2 + mesh[a] ** 2
    for a in range(n):
        dx = _spectral_derivative(F.values, F.axes[a], a)
        dp = _spectral_derivative(F.values, F.axes[n + a], n + a)
        sig = sig + mesh[n + a] * dx - mesh[a] * dp
    return F.with_values(-0.5 * lap - 0.5j * sig + 0.125 * r2 * F.values)


def harmonic_oscillator_via_zhat(F: GridFunctionZ) -> GridFunctionZ:
    """Independent route: (x_ph^2 + p_ph^2)/2 assembled from zhat_ph_apply."""
    n = F.n
    out = np.zeros_like(F.values)
    for j in range(n):
        for kind in ("x", "p"):
            out = out + zhat_ph_apply(kind, j, zhat_ph_apply(kind, j, F)).values
    return F.with_values(0.5 * out)


def cr_condition_residual(F: GridFunctionZ, window_radius: float = 4.0) -> float:
    """Relative size of (d_x - i d_p)(e^{|z|^2/4} F) on a window around the
    origin; members of the U_{phi_0} range sit at grid-accuracy level,
    generic states at O(1).

    The weight exponent matching this U_phi normalization is |z|^2/4: the
    image of the ground state is e^{-|z|^2/4} and e^{|z|^2/4} U_{phi_0} f
    collapses to a function of x - i p alone (anti-analytic). The
    exponential never materializes globally (overflow guard): the
    derivative expands as

        e^{|z|^2/4} [ (x - i p)/2 * F + (d_x - i d_p) F ].
    """
    n = F.n
    mesh = F.meshes()
    r2 = sum(m**2 for m in mesh)
    window = r2 <= window_radius**2
    if not window.any():
        raise DomainSizeError("CR window misses the grid")
    weight = np.exp(0.25 * np.minimum(r2, 2.0 * window_radius**2))
    num = 0.0
    den = 0.0
    for j in range(n):
        dxF = _spectral_derivative(F.values, F.axes[j], j)
        dpF = _spectral_derivative(F.values, F.axes[n + j], n + j)
        G = 0.5 * (mesh[j] - 1j * mesh[n + j]) * F.values + dxF - 1j * dpF
        num = max(num, float(np.sqrt(np.sum((np.abs(weight * G) ** 2)[window]))))
        den = max(den, float(np.sqrt(np.sum((np.abs(weight * F.values) ** 2)[window]))))
    if den == 0.0:
        raise DomainSizeError("state vanishes on the CR window")
    return num / den


# ---------------------------------------------------------------------------
# metaplectic covariance on phase space


def s_ph_apply(
    word: QFTWord | PrimitiveWord,
    F: GridFunctionZ,
    window: WindowState,
    axes_x: tuple[Axis, ...],
    inverse: bool = False,
) -> GridFunctionZ:
    """S_ph = U_phi S U_phi^* acting on phase-space functions."""
    f = u_phi_adjoint(F, window, axes_x)
    if inverse:
        if isinstance(word, QFTWord):
            g = word.apply_inverse(f)
        else:
            g = word.inverse().apply(f)
    else:
        g = word.apply(f)
    return u_phi(g, window, F.axes)


def _battery_residual(pairs) -> float:
    num = 0.0
    den = 0.0
    for lhs, rhs in pairs:
        diff = float(
            np.sqrt(np.sum(np.abs(lhs.values - rhs.values) ** 2) * lhs.cell())
        )
        num = max(num, diff)
        den = max(den, rhs.norm())
    return num / max(den, 1e-300)


def metaplectic_covariance_residual(
    word: QFTWord,
    symbol: GridFunctionZ,
    states: list[GridFunctionZ],
    window: WindowState,
    axes_x: tuple[Axis, ...],
    transported_symbol,
) -> float:
    """Relative residual of (a o S)_ph = S_ph^{-1} A_ph S_ph on a battery.

    ``symbol`` samples the twisted symbol a_sigma of A; ``transported_symbol``
    maps S to the sampled twisted symbol of a o S (which is a_sigma o S for
    S symplectic; closed-form symbols resample it exactly)."""
    a_S = transported_symbol(word.matrix())
    pairs = []
    for F in states:
        lhs = a_ph_apply(a_S, F)
        inner = a_ph_apply(symbol, s_ph_apply(word, F, window, axes_x))
        rhs = s_ph_apply(word, inner, window, axes_x, inverse=True)
        pairs.append((lhs, rhs))
    return _battery_residual(pairs)


def window_transform_rule_residual(
    word: QFTWord,
    f: GridFunctionX,
    window: WindowState,
    sample_points: np.ndarray,
) -> float:
    """Residual of U_phi(S f) = (U_{phi_S} f) o S^{-1} with
    phi_S = conj(S^{-1} conj(phi)), compared pointwise on sample_points."""
    Sf = word.apply(f)
    lhs = u_phi_pointwise(Sf, window, sample_points)
    conj_phi = window.phi.with_values(np.conj(window.phi.values))
    phi_S = window.phi.with_values(np.conj(word.apply_inverse(conj_phi).values))
    nrm = phi_S.norm()
    phi_S = phi_S.with_values(phi_S.values / nrm)
    Sinv = np.linalg.inv(word.matrix())
    moved = (Sinv @ np.atleast_2d(np.asarray(sample_points, dtype=float)).T).T
    rhs = u_phi_pointwise(f, WindowState(phi_S), moved) * nrm
    scale = float(np.abs(lhs).max())
    return float(np.abs(lhs - rhs).max()) / max(scale, 1e-300)
