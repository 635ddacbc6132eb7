"""Foundations: inertia, the closed-form Fresnel integral (checked against
a brute-force regulated quadrature oracle), principal unitary logs, and
phase lifting."""

import numpy as np
import pytest

from phaseweyl import numkit as nk
from phaseweyl.errors import (
    BranchCutError,
    IntegralityError,
    SingularMatrixError,
    SymmetryError,
    UndersamplingError,
)


# ---------------------------------------------------------------------------
# independent oracle: regulated quadrature of the oscillatory integral,
# Pade-extrapolated in the regulator (validated to < 1e-6 relative for
# spectra bounded away from zero; see test_fresnel_oracle_against_quadrature)


def _regulated_value(M, v, eps):
    M = np.atleast_2d(M)
    v = np.atleast_1d(v)
    m = M.shape[0]
    R = np.sqrt(30.0 / eps)
    fmax = np.abs(M).sum(axis=1).max() * R + np.abs(v).max() + 3.0
    du = 0.3 * np.pi / fmax
    npts = int(np.ceil(2 * R / du)) | 1
    u = np.linspace(-R, R, npts)
    du = u[1] - u[0]
    if m == 1:
        ph = 0.5 * M[0, 0] * u**2 - v[0] * u
        return np.sum(np.exp(1j * ph - eps * u**2)) * du * (2 * np.pi) ** -0.5
    out = 0.0
    for s in range(0, npts, 256):
        U1 = u[s : s + 256][:, None]
        U2 = u[None, :]
        ph = (
            0.5 * (M[0, 0] * U1**2 + 2 * M[0, 1] * U1 * U2 + M[1, 1] * U2**2)
            - v[0] * U1
            - v[1] * U2
        )
        out += np.sum(np.exp(1j * ph - eps * (U1**2 + U2**2))) * du * du
    return out / (2 * np.pi)


def fresnel_quadrature_oracle(M, v):
    eps = (0.05, 0.04, 0.03, 0.02, 0.015)
    vals = [_regulated_value(np.asarray(M, float), np.asarray(v, float), e) for e in eps]
    e = np.asarray(eps, dtype=complex)
    y = np.asarray(vals)
    cols = [e**0, e, e**2, -y * e, -y * e**2]
    coef = np.linalg.solve(np.array(cols).T, y)
    return coef[0]


# ---------------------------------------------------------------------------


def test_inertia_examples():
    tri = nk.inertia(np.diag([1.0, -1.0, 3.0]))
    assert (tri.n_plus, tri.n_minus, tri.n_zero) == (2, 1, 0)
    assert tri.signature == 1
    zero = nk.inertia(np.zeros((2, 2)))
    assert (zero.n_plus, zero.n_minus, zero.n_zero) == (0, 0, 2)
    assert zero.signature == 0
    # W_S of the quarter-rotation endpoint J (hand value [-2])
    assert nk.inertia(np.array([[-2.0]])).signature == -1


def test_inertia_congruence_invariance(rng):
    for _ in range(30):
        n = int(rng.integers(1, 6))
        M = rng.standard_normal((n, n))
        M = 0.5 * (M + M.T)
        if np.abs(np.linalg.eigvalsh(M)).min() < 1e-3:
            continue
        R = rng.standard_normal((n, n)) + np.eye(n) * 1.5
        tri = nk.inertia(M)
        tri2 = nk.inertia(R.T @ M @ R)
        assert (tri.n_plus, tri.n_minus, tri.n_zero) == (tri2.n_plus, tri2.n_minus, tri2.n_zero)


def test_inertia_rejects_asymmetric():
    with pytest.raises(SymmetryError):
        nk.inertia(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_fresnel_closed_form_values():
    # sign M = 1, v = 0: exp(i pi / 4)
    got = nk.fresnel_gaussian_ft(np.array([[1.0]]), np.array([0.0]))
    assert got == pytest.approx(np.exp(0.25j * np.pi), abs=1e-14)
    # sign flip symmetry
    got = nk.fresnel_gaussian_ft(np.array([[-1.0]]), np.array([0.0]))
    assert got == pytest.approx(np.exp(-0.25j * np.pi), abs=1e-14)
    # M = I_2, v = (1, 0): exp(i pi/2) exp(-i/2)
    got = nk.fresnel_gaussian_ft(np.eye(2), np.array([1.0, 0.0]))
    assert got == pytest.approx(np.exp(0.5j * np.pi) * np.exp(-0.5j), abs=1e-13)


def test_fresnel_oracle_against_quadrature():
    # the derived example and two generic instances, against brute force
    cases = [
        (np.eye(2), np.array([1.0, 0.0])),
        (np.array([[2.0]]), np.array([3.0])),
        (np.array([[0.7, 0.3], [0.3, -1.2]]), np.array([0.5, -1.0])),
    ]
    for M, v in cases:
        got = nk.fresnel_gaussian_ft(M, v)
        want = fresnel_quadrature_oracle(M, v)
        assert abs(got - want) / abs(want) < 1e-6


def test_fresnel_singular_raises_with_condition():
    with pytest.raises(SingularMatrixError) as err:
        nk.fresnel_gaussian_ft(np.diag([1.0, 0.0]), np.zeros(2))
    assert err.value.cond is not None


def test_unitary_log_trace():
    assert nk.unitary_log_trace(np.eye(3)) == pytest.approx(0.0)
    assert nk.unitary_log_trace(np.array([[1j]])) == pytest.approx(1j * np.pi / 2)
    w = np.diag([np.exp(1j * np.pi / 3), np.exp(-1j * np.pi / 4)])
    assert nk.unitary_log_trace(w) == pytest.approx(1j * (np.pi / 3 - np.pi / 4))
    with pytest.raises(BranchCutError):
        nk.unitary_log_trace(np.diag([-1.0 + 0j, 1.0]))
    with pytest.raises(SymmetryError):
        nk.unitary_log_trace(np.array([[2.0 + 0j]]))


def test_lift_phase_examples():
    track = nk.lift_phase(np.ones(3, dtype=complex))
    np.testing.assert_allclose(track.theta, 0.0)
    track = nk.lift_phase(np.exp(1j * np.pi * np.array([0.0, 0.5, 1.0])))
    np.testing.assert_allclose(track.theta, [0.0, np.pi / 2, np.pi], atol=1e-12)
    # full degree-one loop over 9 samples
    loop = np.exp(2j * np.pi * np.linspace(0, 1, 9))
    track = nk.lift_phase(loop)
    assert track.theta[-1] == pytest.approx(2 * np.pi)
    assert track.winding == pytest.approx(1.0)


def test_lift_phase_concatenation_additivity(rng):
    incr = rng.uniform(-2.5, 2.5, size=40)
    samples = np.exp(1j * np.concatenate([[0.4], 0.4 + np.cumsum(incr)]))
    full = nk.lift_phase(samples)
    head = nk.lift_phase(samples[:21])
    tail = nk.lift_phase(samples[20:], theta0=float(head.theta[-1]))
    assert full.theta[-1] == pytest.approx(tail.theta[-1], abs=1e-9)


def test_lift_phase_rejects_jumps():
    with pytest.raises(UndersamplingError):
        nk.lift_phase(np.array([1.0, -1.0], dtype=complex))
    with pytest.raises(UndersamplingError):
        nk.lift_phase(np.array([1.0, 2.0], dtype=complex))


def test_assert_integer():
    assert nk.assert_integer(3.0000000001) == 3
    with pytest.raises(IntegralityError):
        nk.assert_integer(3.01)
