"""Symplectic layer: block algebra, generating functions, the Cayley
transform and its identities, paths."""

import numpy as np
import pytest

from phaseweyl import sympcore as sc
from phaseweyl.errors import (
    DegenerateCompositionError,
    DegenerateFixedPointError,
    DimensionError,
    NotFreeError,
)

J1 = sc.standard_j(1)


def test_is_symplectic_examples():
    assert sc.is_symplectic(np.eye(2))
    assert sc.is_symplectic(J1)
    assert not sc.is_symplectic(np.diag([2.0, 1.0]))
    with pytest.raises(DimensionError):
        sc.symplectic_defect(np.eye(3))


def test_symplectic_form_convention():
    # sigma((x,p),(x',p')) = <p,x'> - <p',x>
    assert sc.symplectic_form([1.0, 0.0], [0.0, 1.0]) == pytest.approx(-1.0)
    assert sc.symplectic_form([0.0, 1.0], [1.0, 0.0]) == pytest.approx(1.0)


def test_free_from_generating_hand_oracle():
    # W = -<x, x'>: p = dW/dx = -x', p' = -dW/dx' = x  =>  S = J (by hand)
    W = sc.GeneratingFunction(P=np.zeros((1, 1)), L=np.eye(1), Q=np.zeros((1, 1)))
    np.testing.assert_allclose(sc.free_from_generating(W), J1, atol=1e-14)
    # same in block form, n = 2
    W2 = sc.GeneratingFunction(P=np.zeros((2, 2)), L=np.eye(2), Q=np.zeros((2, 2)))
    np.testing.assert_allclose(sc.free_from_generating(W2), sc.standard_j(2), atol=1e-14)


def test_generating_function_gradient_relations(rng):
    # numerical check of p = dW/dx, p' = -dW/dx' at random points
    W = sc.GeneratingFunction(
        P=np.array([[0.7]]), L=np.array([[1.3]]), Q=np.array([[-0.4]])
    )
    S = sc.free_from_generating(W)
    for _ in range(5):
        xp, pp = rng.standard_normal(2)
        x, p = S @ np.array([xp, pp])
        h = 1e-6
        dWdx = (W.value(x + h, xp) - W.value(x - h, xp)) / (2 * h)
        dWdxp = (W.value(x, xp + h) - W.value(x, xp - h)) / (2 * h)
        assert dWdx == pytest.approx(p, abs=1e-6)
        assert dWdxp == pytest.approx(-pp, abs=1e-6)


def test_generating_from_free_examples():
    W = sc.generating_from_free(J1)
    assert W.P[0, 0] == pytest.approx(0.0)
    assert W.L[0, 0] == pytest.approx(1.0)
    assert W.Q[0, 0] == pytest.approx(0.0)
    with pytest.raises(NotFreeError):
        sc.generating_from_free(np.eye(2))


def test_generating_roundtrips(rng):
    for _ in range(40):
        n = int(rng.integers(1, 4))
        S = sc.random_free_symplectic(n, rng)
        W = sc.generating_from_free(S)
        np.testing.assert_allclose(sc.free_from_generating(W), S, atol=1e-10)
    # roundtrip the other way on random W
    for _ in range(10):
        n = int(rng.integers(1, 3))
        P = rng.standard_normal((n, n))
        Q = rng.standard_normal((n, n))
        L = rng.standard_normal((n, n)) + 2 * np.eye(n)
        W = sc.GeneratingFunction(P=0.5 * (P + P.T), L=L, Q=0.5 * (Q + Q.T))
        W2 = sc.generating_from_free(sc.free_from_generating(W))
        np.testing.assert_allclose(W2.P, W.P, atol=1e-9)
        np.testing.assert_allclose(W2.L, W.L, atol=1e-9)
        np.testing.assert_allclose(W2.Q, W.Q, atol=1e-9)


def test_cayley_examples():
    # direct arithmetic: M_J = J(J+I)(J-I)^{-1}/2 = I/2
    np.testing.assert_allclose(sc.cayley_transform(J1), 0.5 * np.eye(2), atol=1e-14)
    # S = -I: numerator vanishes
    np.testing.assert_allclose(sc.cayley_transform(-np.eye(2)), np.zeros((2, 2)), atol=1e-14)
    # inverse examples
    np.testing.assert_allclose(sc.cayley_inverse(0.5 * np.eye(2)), J1, atol=1e-12)
    np.testing.assert_allclose(sc.cayley_inverse(np.zeros((2, 2))), -np.eye(2), atol=1e-12)
    with pytest.raises(DegenerateFixedPointError):
        sc.cayley_transform(np.eye(2))


def test_cayley_bijection_and_inverse_law(rng):
    for _ in range(60):
        n = int(rng.integers(1, 5))
        S = sc.random_symplectic(n, rng)
        if abs(np.linalg.det(S - np.eye(2 * n))) < 1e-4:
            continue
        M = sc.cayley_transform(S)
        np.testing.assert_allclose(sc.cayley_inverse(M), S, atol=1e-9)
        np.testing.assert_allclose(
            sc.cayley_transform(np.linalg.inv(S)), -M, atol=1e-10 * max(1, np.abs(M).max())
        )


def test_cayley_of_product(rng):
    # J composed with J: M_{-I} = 0
    np.testing.assert_allclose(sc.cayley_of_product(J1, J1), np.zeros((2, 2)), atol=1e-12)
    done = 0
    while done < 25:
        n = int(rng.integers(1, 4))
        S, Sp = sc.random_symplectic(n, rng), sc.random_symplectic(n, rng)
        I = np.eye(2 * n)
        if min(
            abs(np.linalg.det(S - I)),
            abs(np.linalg.det(Sp - I)),
            abs(np.linalg.det(S @ Sp - I)),
        ) < 0.1:
            continue
        M = sc.cayley_of_product(S, Sp)  # asserts mss and mess internally
        np.testing.assert_allclose(M, sc.cayley_transform(S @ Sp), atol=1e-9)
        done += 1
    with pytest.raises(DegenerateCompositionError):
        sc.cayley_of_product(J1, np.linalg.inv(J1))


def test_hessian_ws_and_lemma1(rng):
    np.testing.assert_allclose(sc.hessian_ws(J1), np.array([[-2.0]]), atol=1e-14)
    # det(J - I) = 2 = (-1)^1 * det B * det W_S = -1 * 1 * (-2)
    assert np.linalg.det(J1 - np.eye(2)) == pytest.approx(2.0)
    for _ in range(40):
        n = int(rng.integers(1, 5))
        S = sc.random_free_symplectic(n, rng)
        lhs = np.linalg.det(S - np.eye(2 * n))
        rhs = (-1.0) ** n * np.linalg.det(sc.blocks(S)[1]) * np.linalg.det(sc.hessian_ws(S))
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))
    with pytest.raises(NotFreeError):
        sc.hessian_ws(np.eye(2))


def test_random_symplectic_membership(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        S = sc.random_symplectic(n, rng)
        assert sc.symplectic_defect(S) < 1e-9
        assert np.linalg.det(S) == pytest.approx(1.0, abs=1e-7)


def test_paths(rng):
    p = sc.SymplecticPath.random(2, rng)
    samples = p.samples(8)
    assert samples.shape == (9, 4, 4)
    np.testing.assert_allclose(samples[0], np.eye(4), atol=1e-14)
    for S in samples:
        assert sc.symplectic_defect(S) < 1e-8
    # concatenation runs through the first endpoint
    q = sc.SymplecticPath.random(2, rng)
    both = p.then(q)
    np.testing.assert_allclose(both.endpoint(), p.endpoint() @ q.endpoint(), atol=1e-10)
    # pointwise inverse
    np.testing.assert_allclose(
        p.inverse().endpoint(), np.linalg.inv(p.endpoint()), atol=1e-10
    )
    # path_to lands on its target through the group
    S = sc.random_symplectic(2, rng)
    pt = sc.path_to(S)
    np.testing.assert_allclose(pt.endpoint(), S, atol=1e-8)
    for T in pt.samples(16):
        assert sc.symplectic_defect(T) < 1e-7


def test_rotation_and_alpha_paths():
    quarter = sc.rotation_path(1, np.pi / 2)
    np.testing.assert_allclose(quarter.endpoint(), J1, atol=1e-12)
    loop = sc.alpha_loop(3, 2)
    np.testing.assert_allclose(loop.endpoint(), np.eye(6), atol=1e-12)
    assert len(loop.legs) == 2
