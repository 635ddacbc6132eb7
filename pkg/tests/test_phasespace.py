"""Phase-space calculus: Wigner--Moyal, U_phi, the Heisenberg machinery,
A_ph operators, and the covariance identities."""

import numpy as np
import pytest

from phaseweyl import metaplectic as mp
from phaseweyl import phasespace as ps
from phaseweyl import sympcore as sc
from phaseweyl.errors import CommensurabilityError, DomainSizeError
from phaseweyl.grids import (
    GridFunctionZ,
    WindowState,
    coherent_state,
    gaussian_ground_state,
    hermite_state,
    random_state_battery,
    standard_axes,
)

from conftest import rel_l2


@pytest.fixture(scope="module")
def setup(coarse_axes_pair):
    axes_x, axes_z = coarse_axes_pair
    rng = np.random.default_rng(77)
    phi0 = gaussian_ground_state(axes_x)
    win = WindowState(phi0)
    battery = random_state_battery(axes_x, rng, count=4, max_center=1.5)
    return axes_x, axes_z, phi0, win, battery, rng


def test_wigner_of_ground_state(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    W = ps.wigner_moyal(phi0, phi0, axes_z)
    # real, nonnegative Gaussian blob centered at 0
    assert np.abs(W.values.imag).max() < 1e-12
    assert W.values.real.min() > -1e-12
    i0 = axes_z[0].points // 2
    assert W.values.real.argmax() == i0 * axes_z[1].points + i0
    # closed form (1/pi) exp(-x^2 - p^2) confirmed numerically
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")
    want = np.exp(-(mesh[0] ** 2) - mesh[1] ** 2) / np.pi
    np.testing.assert_allclose(W.values.real, want, atol=1e-10)


def test_moyal_identity(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    f, fp, g, gp = battery
    lhs = ps.wigner_moyal(f, phi0, axes_z).inner(ps.wigner_moyal(fp, g, axes_z))
    rhs = (2 * np.pi) ** -1 * f.inner(fp) * np.conj(phi0.inner(g))
    assert abs(lhs - rhs) < 1e-6


def test_wigner_covariance(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    q = mp.random_qft(1, np.random.default_rng(5), chirp_scale=0.3, l_range=(0.9, 1.1))
    word = mp.QFTWord([q])
    pts = np.stack(np.meshgrid(np.linspace(-3, 3, 7), np.linspace(-3, 3, 7)), axis=-1).reshape(-1, 2)
    lhs = ps.wigner_pointwise(word.apply(battery[0]), word.apply(battery[1]), pts)
    rhs = ps.wigner_pointwise(
        battery[0], battery[1], (np.linalg.inv(word.matrix()) @ pts.T).T
    )
    assert np.abs(lhs - rhs).max() / np.abs(rhs).max() < 1e-5


def test_u_phi_isometry_and_values(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    f, g = battery[:2]
    F, G = ps.u_phi(f, win, axes_z), ps.u_phi(g, win, axes_z)
    assert abs(F.norm() - 1.0) < 1e-6
    assert abs(F.inner(G) - f.inner(g)) < 1e-6
    # orthogonal inputs stay orthogonal
    h0, h1 = phi0, hermite_state(axes_x, 1)
    assert abs(ps.u_phi(h0, win, axes_z).inner(ps.u_phi(h1, win, axes_z))) < 1e-6
    # f = phi = phi0: value at z = 0 is real positive ((2 pi)^{-1/2})
    U0 = ps.u_phi(phi0, win, axes_z)
    i0 = axes_z[0].points // 2
    v = U0.values[i0, i0]
    assert abs(v.imag) < 1e-12 and v.real > 0
    assert v.real == pytest.approx((2 * np.pi) ** -0.5, abs=1e-10)


def test_u_phi_matches_rescaled_wigner(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    f = battery[0]
    W = ps.wigner_moyal(f, phi0.with_values(np.conj(phi0.values)), axes_z, half_arguments=True)
    np.testing.assert_allclose(
        (np.pi / 2) ** 0.5 * W.values,
        ps.u_phi(f, win, axes_z).values,
        atol=1e-10,
    )


def test_u_phi_adjoint(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    f = battery[2]
    F = ps.u_phi(f, win, axes_z)
    # reconstruction
    assert rel_l2(ps.u_phi_adjoint(F, win, axes_x), f) < 1e-6
    # adjoint defect on a smooth probe
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")
    probe = GridFunctionZ(axes_z, np.exp(-0.15 * (mesh[0] ** 2 + mesh[1] ** 2) + 0.3j * mesh[1]))
    lhs = F.inner(probe)
    rhs = f.inner(ps.u_phi_adjoint(probe, win, axes_x))
    assert abs(lhs - rhs) < 1e-8


def test_t_ph_identities(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    F = ps.u_phi(battery[0], win, axes_z)
    step = axes_z[0].step
    # z0 = 0 is the identity
    np.testing.assert_array_equal(ps.t_ph(np.zeros(2), F).values, F.values)
    z0 = np.array([5 * step, -3 * step])
    z1 = np.array([-2 * step, 7 * step])
    sig = sc.symplectic_form(z0, z1)
    a = ps.t_ph(z1, ps.t_ph(z0, F))
    b = ps.t_ph(z0, ps.t_ph(z1, F))
    np.testing.assert_allclose(a.values, np.exp(-1j * sig) * b.values, atol=1e-10)
    np.testing.assert_allclose(
        b.values, np.exp(0.5j * sig) * ps.t_ph(z0 + z1, F).values, atol=1e-10
    )
    with pytest.raises(CommensurabilityError):
        ps.t_ph(np.array([0.4 * step, 0.0]), F)


def test_heisenberg_representations(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    f = coherent_state(axes_x, [0.0], [0.0])
    step = axes_x[0].step
    # identity at the origin of the group
    np.testing.assert_array_equal(ps.heisenberg_weyl(np.zeros(2), 0.0, f).values, f.values)
    # pure phase + shift preserves the norm exactly
    z0 = np.array([8 * step, 1.3])
    g = ps.heisenberg_weyl(z0, 0.7, f)
    assert g.norm() == pytest.approx(f.norm(), abs=1e-13)
    # group law matches the displayed multiplication of H_n
    z1 = np.array([-5 * step, -0.4])
    t0, t1 = 0.3, -1.1
    sig = sc.symplectic_form(z0, z1)
    aa = ps.heisenberg_weyl(z0, t0, ps.heisenberg_weyl(z1, t1, f))
    bb = ps.heisenberg_weyl(z0 + z1, t0 + t1 + 0.5 * sig, f)
    np.testing.assert_allclose(aa.values, bb.values, atol=1e-12)
    # phase-space side: t_ph_heisenberg group law and global phase
    F = ps.u_phi(f, win, axes_z)
    np.testing.assert_allclose(
        ps.t_ph_heisenberg(np.zeros(2), 0.9, F).values, np.exp(0.9j) * F.values
    )
    # Stone-von Neumann intertwining with matched t0 phases
    zs = np.array([4 * axes_z[0].step, -6 * axes_z[0].step])
    lhs = ps.t_ph_heisenberg(zs, 0.5, ps.u_phi(f, win, axes_z))
    rhs = ps.u_phi(ps.heisenberg_weyl(zs, 0.5, f), win, axes_z)
    np.testing.assert_allclose(lhs.values, rhs.values, atol=1e-8)


def test_ladder_relations(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    f = battery[1]
    F = ps.u_phi(f, win, axes_z)
    xf = f.with_values(f.meshes()[0] * f.values)
    assert rel_l2(ps.u_phi(xf, win, axes_z), ps.zhat_ph_apply("x", 0, F)) < 1e-5
    from phaseweyl.phasespace import _spectral_derivative

    pf = f.with_values(-1j * _spectral_derivative(f.values, f.axes[0], 0))
    assert rel_l2(ps.u_phi(pf, win, axes_z), ps.zhat_ph_apply("p", 0, F)) < 1e-5
    # canonical commutator
    comm = (
        ps.zhat_ph_apply("x", 0, ps.zhat_ph_apply("p", 0, F)).values
        - ps.zhat_ph_apply("p", 0, ps.zhat_ph_apply("x", 0, F)).values
    )
    assert np.abs(comm - 1j * F.values).max() / np.abs(F.values).max() < 1e-6
    # constant F: derivative part drops, x_ph F = x F / 2
    const = GridFunctionZ(axes_z, np.ones_like(F.values))
    got = ps.zhat_ph_apply("x", 0, const)
    mesh = const.meshes()
    np.testing.assert_allclose(got.values, 0.5 * mesh[0], atol=1e-9)


def test_a_ph_identity_and_composition(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    F = ps.u_phi(battery[0], win, axes_z)
    N = axes_z[0].points
    dvals = np.zeros((N, N), dtype=complex)
    dvals[N // 2, N // 2] = 2 * np.pi / (axes_z[0].step * axes_z[1].step)
    assert rel_l2(ps.a_ph_apply(GridFunctionZ(axes_z, dvals), F), F) < 1e-10
    # composition coherence for decaying symbols
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")
    a1 = GridFunctionZ(axes_z, np.exp(-(mesh[0] ** 2 + mesh[1] ** 2) / 3.0 + 0.2j * mesh[0]))
    a2 = GridFunctionZ(axes_z, np.exp(-(mesh[0] ** 2 + mesh[1] ** 2) / 1.5 - 0.4j * mesh[1]))
    c = ps.twisted_convolution_grid(a1, a2)
    lhs = ps.a_ph_apply(c, F)
    rhs = ps.a_ph_apply(a1, ps.a_ph_apply(a2, F))
    assert rel_l2(lhs, rhs) < 1e-5
    # a non-decaying symbol violates the tail certificate
    chirp = GridFunctionZ(axes_z, np.exp(0.5j * (mesh[0] ** 2 + mesh[1] ** 2)))
    with pytest.raises(DomainSizeError):
        ps.a_ph_apply(chirp, F)


def test_intertwining_mult_symbol(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    f = battery[3]
    avals = np.exp(-0.2 * axes_x[0].grid() ** 2) * (1.0 + 0.5 * axes_x[0].grid())
    az = np.zeros(axes_z[0].points, dtype=complex)
    off = axes_z[0].index_of(axes_x[0].grid()[0])
    az[off : off + axes_x[0].points] = avals
    lhs = ps.a_ph_mult_x(az, ps.u_phi(f, win, axes_z))
    rhs = ps.u_phi(f.with_values(avals * f.values), win, axes_z)
    assert rel_l2(lhs, rhs) < 1e-5


def test_harmonic_oscillator(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    U0 = ps.u_phi(phi0, win, axes_z)
    assert rel_l2(ps.harmonic_oscillator_ph(U0), U0.with_values(0.5 * U0.values)) < 1e-5
    U1 = ps.u_phi(hermite_state(axes_x, 1), win, axes_z)
    assert rel_l2(ps.harmonic_oscillator_ph(U1), U1.with_values(1.5 * U1.values)) < 1e-5
    # two independent realizations of the operator agree
    F = ps.u_phi(battery[0], win, axes_z)
    assert rel_l2(ps.harmonic_oscillator_via_zhat(F), ps.harmonic_oscillator_ph(F)) < 1e-6
    # intertwining with the X-side Weyl operator
    assert (
        rel_l2(
            ps.harmonic_oscillator_ph(F),
            ps.u_phi(ps.harmonic_oscillator_x(battery[0]), win, axes_z),
        )
        < 1e-5
    )


def test_cr_residual_separation(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    members = [ps.cr_condition_residual(ps.u_phi(f, win, axes_z)) for f in battery[:2]]
    xphi = phi0.with_values(phi0.meshes()[0] * phi0.values)
    xphi = xphi.with_values(xphi.values / xphi.norm())
    members.append(ps.cr_condition_residual(ps.u_phi(xphi, win, axes_z)))
    assert max(members) <= 1e-4
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")
    generic = ps.cr_condition_residual(
        GridFunctionZ(axes_z, np.exp(-0.1 * (mesh[0] ** 2 + mesh[1] ** 2)) * (1 + 0.5 * np.cos(mesh[0])))
    )
    assert generic > 1e3 * max(members)


def test_metaplectic_covariance(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    states = [ps.u_phi(f, win, axes_z) for f in battery[:2]]
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")
    A = np.array([[0.6, 0.15], [0.15, 0.9]])

    def transported(S):
        zs = np.stack([mesh[0], mesh[1]], axis=-1) @ S.T
        return GridFunctionZ(axes_z, np.exp(-0.5 * np.einsum("...i,ij,...j->...", zs, A, zs)))

    q_j = mp.QuadraticFourierTransform(
        sc.GeneratingFunction(P=np.zeros((1, 1)), L=np.eye(1), Q=np.zeros((1, 1))), 0
    )
    for word in (mp.QFTWord([q_j]), mp.QFTWord([mp.random_qft(1, np.random.default_rng(2), chirp_scale=0.3, l_range=(0.9, 1.1))])):
        res = ps.metaplectic_covariance_residual(word, transported(np.eye(2)), states, win, axes_x, transported)
        assert res < 1e-5
    # identity word: machine-level residual
    res0 = ps.metaplectic_covariance_residual(
        mp.QFTWord([q_j] * 4), transported(np.eye(2)), states[:1], win, axes_x, transported
    )
    assert res0 < 1e-7


def test_window_transform_rule(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    pts = np.stack(np.meshgrid(np.linspace(-3, 3, 5), np.linspace(-3, 3, 5)), axis=-1).reshape(-1, 2)
    q_j = mp.QuadraticFourierTransform(
        sc.GeneratingFunction(P=np.zeros((1, 1)), L=np.eye(1), Q=np.zeros((1, 1))), 0
    )
    assert ps.window_transform_rule_residual(mp.QFTWord([q_j]), battery[0], win, pts) < 1e-5
    word = mp.QFTWord([mp.random_qft(1, np.random.default_rng(4), chirp_scale=0.3, l_range=(0.9, 1.1))])
    assert ps.window_transform_rule_residual(word, battery[0], win, pts) < 1e-5


def test_symplectic_fourier(setup):
    axes_x, axes_z, phi0, win, battery, rng = setup
    mesh = np.meshgrid(axes_z[0].grid(), axes_z[1].grid(), indexing="ij")
    a = GridFunctionZ(axes_z, np.exp(-0.5 * (mesh[0] ** 2 + mesh[1] ** 2)))
    Fa = ps.symplectic_fourier(a)
    # the standard Gaussian is a fixed point with this normalization
    assert rel_l2(Fa, a) < 1e-8
    assert rel_l2(ps.symplectic_fourier(Fa), a) < 1e-8
    # F_sigma(1) pairs like (2 pi)^n delta against smooth tests
    one = GridFunctionZ(axes_z, np.ones_like(mesh[0]))
    spike = ps.symplectic_fourier(one)
    pairing = complex(np.sum(spike.values * a.values) * spike.cell())
    i0 = axes_z[0].points // 2
    assert abs(pairing - 2 * np.pi * a.values[i0, i0]) < 1e-6
