"""Randomized instance generation for the verification suites.

Everything is driven by numpy Generators seeded from one corpus seed, so a
corpus regenerates bit-identically; the adversarial strata include
near-degenerate det(S - I) instances and Lagrangian pairs with every
intersection dimension k <= n.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .lagmaslov import LagLift, LagrangianFrame, lift_of_frame
from .report import InstanceCorpus
from .sympcore import random_symplectic

__all__ = [
    "haar_unitary",
    "random_lagrangian_frame",
    "random_lag_lift",
    "stratified_lagrangian_pair",
    "near_degenerate_symplectic",
    "generate",
]


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(X)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def frame_of_unitary_matrix(u: np.ndarray) -> LagrangianFrame:
    """Frame of u X* under the complex identification (u = A + iB acts as
    [[A, -B], [B, A]])."""
    return LagrangianFrame(np.vstack([-u.imag, u.real]))


def random_lagrangian_frame(n: int, rng: np.random.Generator) -> LagrangianFrame:
    return frame_of_unitary_matrix(haar_unitary(n, rng))


def random_lag_lift(n: int, rng: np.random.Generator, max_turns: int = 2) -> LagLift:
    frame = random_lagrangian_frame(n, rng)
    turns = int(rng.integers(-max_turns, max_turns + 1))
    return lift_of_frame(frame, turns)


def stratified_lagrangian_pair(
    n: int, k: int, rng: np.random.Generator
) -> tuple[LagrangianFrame, LagrangianFrame]:
    """Pair with dim(l cap l') = k exactly: build coordinate-line planes
    sharing k p-axes, then move both by one random symplectic map."""
    if not 0 <= k <= n:
        raise DimensionError(f"stratum {k} outside [0, {n}]")
    F1 = np.zeros((2 * n, n))
    F1[n:, :] = np.eye(n)  # X*
    F2 = np.zeros((2 * n, n))
    for j in range(n):
        if j < k:
            F2[n + j, j] = 1.0  # shared p-axis
        else:
            ang = rng.uniform(0.2, np.pi - 0.2)  # transversal line in plane j
            F2[j, j] = np.sin(ang)
            F2[n + j, j] = np.cos(ang)
    S = random_symplectic(n, rng, 0.6)
    return LagrangianFrame(S @ F1), LagrangianFrame(S @ F2)


def near_degenerate_symplectic(
    n: int, rng: np.random.Generator, det_target: float
) -> np.ndarray:
    """S with det(S - I) small: a tiny rotation block in the first plane,
    conjugated by a random symplectic map.

    For the 2x2 rotation by angle t, det(R - I) = 2(1 - cos t) ~ t^2.
    """
    t = np.sqrt(max(det_target, 1e-300) / 2.0)
    S = np.eye(2 * n)
    S[0, 0] = S[n, n] = np.cos(t)
    S[0, n] = -np.sin(t)
    S[n, 0] = np.sin(t)
    C = random_symplectic(n, rng, 0.5)
    return C @ S @ np.linalg.inv(C)


def generate(spec: dict, seed: int) -> InstanceCorpus:
    """Deterministic corpus from generator parameters.

    spec keys: kind ("symplectic" | "lagrangian-pairs" | "near-degenerate"),
    n_min, n_max, count, plus kind-specific knobs (det_floor).
    """
    corpus = InstanceCorpus(seed=seed, spec=dict(spec))
    rng = np.random.default_rng(seed)
    kind = spec.get("kind", "symplectic")
    n_min = int(spec.get("n_min", 1))
    n_max = int(spec.get("n_max", n_min))
    count = int(spec.get("count", 16))
    if count < 1:
        raise DimensionError("count must be positive")
    for idx in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        if kind == "symplectic":
            S = random_symplectic(n, rng)
            corpus.instances.append({"n": n, "rows": S.tolist()})
        elif kind == "near-degenerate":
            floor = float(spec.get("det_floor", 1e-6))
            target = 10.0 ** rng.uniform(np.log10(floor), -1.0)
            S = near_degenerate_symplectic(n, rng, target)
            corpus.instances.append(
                {
                    "n": n,
                    "rows": S.tolist(),
                    "det_si": float(np.linalg.det(S - np.eye(2 * n))),
                }
            )
        elif kind == "lagrangian-pairs":
            k = idx % (n + 1)
            f1, f2 = stratified_lagrangian_pair(n, k, rng)
            corpus.instances.append(
                {
                    "n": n,
                    "k": k,
                    "columns_a": f1.basis.T.tolist(),
                    "columns_b": f2.basis.T.tolist(),
                }
            )
        else:
            raise DimensionError(f"unknown corpus kind {kind!r}")
    return corpus
