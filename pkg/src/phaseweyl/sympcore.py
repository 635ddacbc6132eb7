"""The symplectic group layer: block structure, free generating functions,
the symplectic Cayley transform, and sampled paths from the identity.

Coordinates are ordered (x_1..x_n, p_1..p_n) throughout, with

    J = [[0, I], [-I, 0]],   sigma(z, z') = <Jz, z'> = <p, x'> - <p', x>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .config import DEFAULT, Tolerances
from .errors import (
    DegenerateCompositionError,
    DegenerateFixedPointError,
    DimensionError,
    NotFreeError,
    SingularMatrixError,
)
from .numkit import check_symmetric

__all__ = [
    "standard_j",
    "symplectic_form",
    "symplectic_defect",
    "is_symplectic",
    "check_symplectic",
    "blocks",
    "GeneratingFunction",
    "free_from_generating",
    "generating_from_free",
    "hessian_ws",
    "cayley_transform",
    "cayley_inverse",
    "cayley_of_product",
    "random_symplectic",
    "random_free_symplectic",
    "SymplecticPath",
    "alpha_loop",
    "rotation_path",
    "path_to",
]


def standard_j(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def symplectic_form(z: np.ndarray, zp: np.ndarray) -> float:
    """sigma(z, z') = <p, x'> - <p', x>."""
    z = np.asarray(z, dtype=float)
    zp = np.asarray(zp, dtype=float)
    n = z.shape[-1] // 2
    return float(z[..., n:] @ zp[..., :n] - zp[..., n:] @ z[..., :n])


def symplectic_defect(S: np.ndarray) -> float:
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        raise DimensionError(f"not an even square matrix: shape {S.shape}")
    J = standard_j(S.shape[0] // 2)
    return float(np.abs(S.T @ J @ S - J).max())


def is_symplectic(S: np.ndarray, eps: float | None = None) -> bool:
    eps = DEFAULT.tol.symp if eps is None else eps
    return symplectic_defect(S) <= eps


def check_symplectic(S: np.ndarray, tol: Tolerances = DEFAULT.tol) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    defect = symplectic_defect(S)
    if defect > tol.symp:
        raise DimensionError(f"matrix not symplectic: |S^T J S - J| = {defect:.3e}")
    return S


def blocks(S: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """A, B, C, D with S = [[A, B], [C, D]] in (x, p) ordering."""
    S = np.asarray(S, dtype=float)
    n = S.shape[0] // 2
    return S[:n, :n], S[:n, n:], S[n:, :n], S[n:, n:]


@dataclass(frozen=True)
class GeneratingFunction:
    """Quadratic form W(x, x') = <Px,x>/2 - <Lx,x'> + <Qx',x'>/2 with
    P, Q symmetric and L invertible; generates the free matrix S_W."""

    P: np.ndarray
    L: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "P", check_symmetric(self.P, what="P"))
        object.__setattr__(self, "Q", check_symmetric(self.Q, what="Q"))
        L = np.asarray(self.L, dtype=float)
        if L.shape != self.P.shape:
            raise DimensionError("P, L, Q must share one square shape")
        if abs(np.linalg.det(L)) <= DEFAULT.tol.free_b:
            raise SingularMatrixError("generating function has singular L")
        object.__setattr__(self, "L", L)

    @property
    def n(self) -> int:
        return self.P.shape[0]

    def value(self, x: np.ndarray, xp: np.ndarray) -> np.ndarray:
        """W(x, x') evaluated with broadcasting over trailing axes (n=1 arrays)."""
        x = np.asarray(x, dtype=float)
        xp = np.asarray(xp, dtype=float)
        if self.n == 1:
            P, L, Q = self.P[0, 0], self.L[0, 0], self.Q[0, 0]
            return 0.5 * P * x**2 - L * x * xp + 0.5 * Q * xp**2
        return (
            0.5 * np.einsum("...i,ij,...j->...", x, self.P, x)
            - np.einsum("...i,ij,...j->...", x, self.L, xp)
            + 0.5 * np.einsum("...i,ij,...j->...", xp, self.Q, xp)
        )

    def hessian_diag(self) -> np.ndarray:
        """Hessian of x -> W(x, x), i.e. P + Q - L - L^T."""
        return self.P + self.Q - self.L - self.L.T


def free_from_generating(W: GeneratingFunction) -> np.ndarray:
    """Free symplectic matrix generated by W: (x,p) = S(x',p') iff
    p = dW/dx and p' = -dW/dx'."""
    Linv = np.linalg.inv(W.L)
    A = Linv @ W.Q
    B = Linv
    C = W.P @ Linv @ W.Q - W.L.T
    D = W.P @ Linv
    S = np.block([[A, B], [C, D]])
    return check_symplectic(S)


def generating_from_free(S: np.ndarray, tol: Tolerances = DEFAULT.tol) -> GeneratingFunction:
    """Recover (P, L, Q) from a free S: P = DB^{-1}, L = B^{-1}, Q = B^{-1}A."""
    S = check_symplectic(S, tol)
    A, B, C, D = blocks(S)
    if abs(np.linalg.det(B)) <= tol.free_b:
        raise NotFreeError(f"S is not free: det B = {np.linalg.det(B):.3e}")
    Binv = np.linalg.inv(B)
    P = check_symmetric(D @ Binv, 1e-7, "DB^{-1}")
    Q = check_symmetric(Binv @ A, 1e-7, "B^{-1}A")
    return GeneratingFunction(P=P, L=Binv, Q=Q)


def hessian_ws(S: np.ndarray, tol: Tolerances = DEFAULT.tol) -> np.ndarray:
    """W_S = DB^{-1} + B^{-1}A - B^{-1} - B^{-T} for free S; invertible
    exactly when det(S - I) != 0."""
    S = check_symplectic(S, tol)
    A, B, C, D = blocks(S)
    if abs(np.linalg.det(B)) <= tol.free_b:
        raise NotFreeError("W_S needs a free matrix (det B != 0)")
    Binv = np.linalg.inv(B)
    return check_symmetric(D @ Binv + Binv @ A - Binv - Binv.T, 1e-7, "W_S")


def _det_si(S: np.ndarray) -> float:
    return float(np.linalg.det(S - np.eye(S.shape[0])))


def cayley_transform(S: np.ndarray, tol: Tolerances = DEFAULT.tol) -> np.ndarray:
    """Symplectic Cayley transform M_S = J(S+I)(S-I)^{-1}/2, symmetric."""
    S = check_symplectic(S, tol)
    d = _det_si(S)
    if abs(d) <= tol.det_si:
        raise DegenerateFixedPointError("Cayley transform undefined", d)
    n = S.shape[0] // 2
    J = standard_j(n)
    I = np.eye(2 * n)
    M = 0.5 * J @ (S + I) @ np.linalg.inv(S - I)
    # cross-check against the M = J/2 + J(S-I)^{-1} form before symmetrizing
    M_alt = 0.5 * J + J @ np.linalg.inv(S - I)
    if np.abs(M - M_alt).max() > 1e-9 * max(1.0, np.abs(M).max()):
        raise DegenerateFixedPointError("Cayley transform forms disagree", d)
    return check_symmetric(M, 1e-7, "M_S")


def cayley_inverse(M: np.ndarray, tol: Tolerances = DEFAULT.tol) -> np.ndarray:
    """Inverse of the Cayley bijection: S = (M - J/2)^{-1}(M + J/2)."""
    M = check_symmetric(M, what="Cayley matrix")
    n = M.shape[0] // 2
    if M.shape[0] % 2:
        raise DimensionError("Cayley matrix must be 2n x 2n")
    J = standard_j(n)
    A = M - 0.5 * J
    if abs(np.linalg.det(A)) <= tol.det_si:
        raise SingularMatrixError("M - J/2 is singular; M is not a Cayley transform")
    S = np.linalg.solve(A, M + 0.5 * J)
    return check_symplectic(S, tol)


def cayley_of_product(S: np.ndarray, Sp: np.ndarray, tol: Tolerances = DEFAULT.tol) -> np.ndarray:
    """M_{SS'} through the composition formula

        M_S + (S^T - I)^{-1} J (M_S + M_{S'})^{-1} J (S - I)^{-1},

    asserting agreement with the direct transform of SS' and the resolvent
    identity for (M_S + M_{S'})^{-1}.
    """
    n = S.shape[0] // 2
    I = np.eye(2 * n)
    J = standard_j(n)
    for name, T in (("S", S), ("S'", Sp), ("SS'", S @ Sp)):
        if abs(_det_si(T)) <= tol.det_si:
            raise DegenerateCompositionError(f"det({name} - I) vanishes")
    MS = cayley_transform(S, tol)
    MSp = cayley_transform(Sp, tol)
    Msum = MS + MSp
    if abs(np.linalg.det(Msum)) <= tol.det_si:
        raise DegenerateCompositionError("M_S + M_{S'} is singular")
    Minv = np.linalg.inv(Msum)
    M = MS + np.linalg.inv(S.T - I) @ J @ Minv @ J @ np.linalg.inv(S - I)
    direct = cayley_transform(S @ Sp, tol)
    scale = max(1.0, float(np.abs(direct).max()))
    if np.abs(M - direct).max() > 1e-9 * scale:
        raise DegenerateCompositionError(
            f"composition formula mismatch {np.abs(M - direct).max():.3e}"
        )
    # (M_S + M_{S'})^{-1} = -(S' - I)(SS' - I)^{-1}(S - I)J
    rhs = -(Sp - I) @ np.linalg.solve(S @ Sp - I, (S - I) @ J)
    if np.abs(Minv - rhs).max() > 1e-9 * max(1.0, float(np.abs(Minv).max())):
        raise DegenerateCompositionError("resolvent identity violated")
    return check_symmetric(M, 1e-7, "M_{SS'}")


# ---------------------------------------------------------------------------
# random instances and paths


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """exp(J H) for H symmetric with entries uniform in [-scale, scale]."""
    H = rng.uniform(-scale, scale, size=(2 * n, 2 * n))
    H = 0.5 * (H + H.T)
    return expm(standard_j(n) @ H)


def random_free_symplectic(
    n: int, rng: np.random.Generator, scale: float = 1.0, min_det_b: float = 1e-2, max_tries: int = 64
) -> np.ndarray:
    for _ in range(max_tries):
        S = random_symplectic(n, rng, scale)
        if abs(np.linalg.det(blocks(S)[1])) >= min_det_b:
            return S
    raise SingularMatrixError("could not draw a free symplectic matrix")


class SymplecticPath:
    """Continuous path [0,1] -> Sp starting at the identity, represented by
    a list of unit-parameter legs (callables). Sampling at any resolution is
    exact, which is what the phase-lifting code needs for dyadic refinement.
    """

    def __init__(self, legs, n: int):
        self.legs = list(legs)
        self.n = n

    # -- constructors --------------------------------------------------

    @classmethod
    def from_generator(cls, H: np.ndarray) -> "SymplecticPath":
        """t -> exp(t J H) for symmetric H."""
        H = check_symmetric(H, 1e-9, "Hamiltonian")
        n = H.shape[0] // 2
        JH = standard_j(n) @ H
        return cls([lambda t, JH=JH: expm(t * JH)], n)

    @classmethod
    def identity(cls, n: int) -> "SymplecticPath":
        I = np.eye(2 * n)
        return cls([lambda t, I=I: I], n)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, scale: float = 1.0) -> "SymplecticPath":
        H = rng.uniform(-scale, scale, size=(2 * n, 2 * n))
        return cls.from_generator(0.5 * (H + H.T))

    # -- combinators ---------------------------------------------------

    def then(self, other: "SymplecticPath") -> "SymplecticPath":
        """Path of the product: run self, then endpoint(self) @ other(t).

        This is the lift composition S_inf S'_inf used by all product laws.
        """
        if other.n != self.n:
            raise DimensionError("path dimensions differ")
        S_end = self.endpoint()
        legs = list(self.legs) + [
            (lambda t, leg=leg, S_end=S_end: S_end @ leg(t)) for leg in other.legs
        ]
        return SymplecticPath(legs, self.n)

    def inverse(self) -> "SymplecticPath":
        """Pointwise-inverse path t -> S(t)^{-1} (the lift of S_inf^{-1})."""
        legs = [
            (lambda t, leg=leg: np.linalg.inv(leg(t))) for leg in self.legs
        ]
        return SymplecticPath(legs, self.n)

    def extended_to(self, leg) -> "SymplecticPath":
        """Append one extra leg (a callable [0,1] -> Sp)."""
        return SymplecticPath(list(self.legs) + [leg], self.n)

    # -- evaluation ----------------------------------------------------

    def endpoint(self) -> np.ndarray:
        return np.asarray(self.legs[-1](1.0), dtype=float)

    def samples(self, per_leg: int) -> np.ndarray:
        """(k+1, 2n, 2n) array of samples, per_leg points per leg plus the
        shared leg endpoints; samples[0] = I is enforced by construction."""
        out = [np.eye(2 * self.n)]
        for leg in self.legs:
            for j in range(1, per_leg + 1):
                out.append(np.asarray(leg(j / per_leg), dtype=float))
        return np.stack(out)


def alpha_loop(n: int, turns: int = 1) -> SymplecticPath:
    """The positively oriented generator of pi_1[Sp]: under the usual
    identification of Sp cap O(2n) with U(n) its determinant loop has
    degree +1 per turn (rotation by -2*pi*t in the (x_1, p_1) plane).
    Multiple turns become separate legs so per-leg sampling never aliases
    a full winding."""

    def one_turn(t: float, n=n, sign=1.0 if turns >= 0 else -1.0) -> np.ndarray:
        S = np.eye(2 * n)
        ang = 2.0 * np.pi * t * sign
        c, s = np.cos(ang), np.sin(ang)
        S[0, 0] = c
        S[0, n] = -s
        S[n, 0] = s
        S[n, n] = c
        return S

    count = max(1, abs(int(turns)))
    if turns == 0:
        return SymplecticPath.identity(n)
    return SymplecticPath([one_turn] * count, n)


def rotation_path(n: int, angle: float) -> SymplecticPath:
    """t -> exp(t * angle * J); at angle = pi/2 this is the quarter rotation
    ending at J."""
    J = standard_j(n)

    def leg(t: float) -> np.ndarray:
        return expm(t * angle * J)

    return SymplecticPath([leg], n)


def path_to(S: np.ndarray, tol: Tolerances = DEFAULT.tol) -> SymplecticPath:
    """Some path from I to S inside Sp (polar interpolation).

    S = U e^{X} with U in Sp cap O(2n) and X = log(S^T S)/2 symmetric and
    Hamiltonian-compatible; both factors interpolate inside the group.
    """
    from scipy.linalg import schur

    S = check_symplectic(S, tol)
    n = S.shape[0] // 2
    # positive factor: S^T S is symplectic positive definite, its log sits
    # in sp(2n) so exp(tX) stays in the group
    lam, V = np.linalg.eigh(S.T @ S)
    X = V @ np.diag(0.5 * np.log(lam)) @ V.T
    P = V @ np.diag(np.sqrt(lam)) @ V.T
    U = S @ np.linalg.inv(P)
    # unitary factor via the complex identification u = A + iB; u is normal,
    # so its complex Schur form is diagonal and gives a safe logarithm
    u = U[:n, :n] + 1j * U[n:, :n]
    T, Q = schur(u, output="complex")
    logu = Q @ np.diag(1j * np.angle(np.diag(T))) @ Q.conj().T
    if np.abs(expm(logu) - u).max() > 1e-8:
        raise SingularMatrixError("unitary log failed in path construction")

    def leg(t: float) -> np.ndarray:
        ut = expm(t * logu)
        Ut = np.block([[ut.real, -ut.imag], [ut.imag, ut.real]])
        return Ut @ expm(t * X)

    return SymplecticPath([leg], n)
