"""Grid plumbing: the oscillatory transform against a dense sum, axis
snapping, states, and the binary format."""

import numpy as np
import pytest

from phaseweyl.errors import CommensurabilityError, DimensionError
from phaseweyl.grids import (
    Axis,
    GridFunctionX,
    GridFunctionZ,
    coherent_state,
    gaussian_ground_state,
    grid_ft,
    hermite_state,
    random_state_battery,
    read_grid,
    standard_axes,
    write_grid,
)


def test_axis_basics():
    ax = Axis(0.0, 8.0, 64)
    assert ax.step == pytest.approx(0.25)
    grid = ax.grid()
    assert grid[0] == pytest.approx(-8.0)
    assert grid[32] == pytest.approx(0.0)
    assert ax.index_of(1.25) == 37
    assert ax.shift_steps(-0.75) == -3
    with pytest.raises(CommensurabilityError):
        ax.shift_steps(0.1)
    with pytest.raises(DimensionError):
        Axis(0.0, 1.0, 48)  # not a power of two


def test_grid_ft_matches_dense_sum(rng):
    ax_in = Axis(0.4, 5.0, 64)
    ax_out = Axis(-0.3, 7.0, 128)
    f = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    for sign in (-1, +1):
        got = grid_ft(f, ax_in, ax_out, sign=sign)
        kernel = np.exp(sign * 1j * np.outer(ax_out.grid(), ax_in.grid()))
        want = kernel @ f * ax_in.step
        np.testing.assert_allclose(got, want, atol=1e-11)
    # batched along another axis
    F = rng.standard_normal((3, 64)) + 1j * rng.standard_normal((3, 64))
    got = grid_ft(F, ax_in, ax_out, sign=-1, axis=1)
    for r in range(3):
        np.testing.assert_allclose(got[r], grid_ft(F[r], ax_in, ax_out, sign=-1), atol=1e-11)


def test_states(axes_pair):
    axes_x, _ = axes_pair
    phi0 = gaussian_ground_state(axes_x)
    assert phi0.norm() == pytest.approx(1.0, abs=1e-12)
    c = coherent_state(axes_x, np.array([1.0]), np.array([-2.0]))
    assert c.norm() == pytest.approx(1.0, abs=1e-12)
    h1 = hermite_state(axes_x, 1)
    assert h1.norm() == pytest.approx(1.0, abs=1e-12)
    assert abs(phi0.inner(h1)) < 1e-12
    battery = random_state_battery(axes_x, np.random.default_rng(0), count=4)
    for f in battery:
        assert f.norm() == pytest.approx(1.0, abs=1e-12)


def test_grid_io_roundtrip(tmp_path, axes_pair):
    axes_x, axes_z = axes_pair
    f = coherent_state(axes_x, np.array([0.5]), np.array([1.5]))
    path = tmp_path / "state.bin"
    write_grid(f, path)
    g = read_grid(path)
    assert isinstance(g, GridFunctionX)
    assert g.axes == f.axes
    np.testing.assert_array_equal(g.values, f.values)  # bit-identical
    # Z flavor keeps its type through the sidecar
    F = GridFunctionZ(
        (Axis(0.0, 2.0, 16), Axis(0.0, 2.0, 16)), np.ones((16, 16), dtype=complex)
    )
    write_grid(F, tmp_path / "zgrid.bin")
    G = read_grid(tmp_path / "zgrid.bin")
    assert isinstance(G, GridFunctionZ)
    assert G.n == 1


def test_grid_function_validation():
    ax = Axis(0.0, 1.0, 8)
    with pytest.raises(DimensionError):
        GridFunctionX((ax,), np.ones(4))
    with pytest.raises(DimensionError):
        GridFunctionX((ax,), np.full(8, np.nan))


def test_standard_axes_share_step():
    axes_x, axes_z = standard_axes()
    assert axes_z[0].step == pytest.approx(axes_x[0].step)
    assert axes_z[0].halfwidth == pytest.approx(2 * axes_x[0].halfwidth)
