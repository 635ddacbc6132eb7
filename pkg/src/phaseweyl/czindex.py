"""The index nu on lifted symplectic paths, computed by two independent
routes: the doubled-space relative Maslov index of (I + S_t) against the
diagonal (reference oracle), and the free-matrix formula
nu = (mu_{X*} + sign W_S)/2 (fast path).

The doubled space (Z + Z, sigma (-) sigma) is mapped onto the standard
(R^{4n}, sigma) by the linear symplectomorphism

    Phi: (x1, p1, x2, p2) -> (x1, x2, p1, -p2),

after which the whole lagmaslov machinery applies verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .config import DEFAULT, Tolerances
from .errors import (
    DegenerateFixedPointError,
    IntegralityError,
    NotFreeError,
    SearchError,
)
from .lagmaslov import (
    LagrangianFrame,
    SymplecticPathLift,
    maslov_mu_ell,
    x_star_frame,
)
from .numkit import assert_integer, signature
from .sympcore import (
    SymplecticPath,
    blocks,
    cayley_transform,
    hessian_ws,
    standard_j,
)

__all__ = [
    "NuValue",
    "doubling_map",
    "diagonal_frame",
    "doubled_path",
    "nu_via_doubled",
    "nu_via_free",
    "nu",
    "nu_antisymmetry_check",
    "nu_of_product",
    "nu_locally_constant_check",
    "nu_mod4",
]


@dataclass(frozen=True)
class NuValue:
    value: int
    route: str  # "doubled" or "free"


def doubling_map(n: int) -> np.ndarray:
    """Phi with Phi^T J_{4n} Phi = diag(J_{2n}, -J_{2n}) (input ordering
    (x1, p1, x2, p2) as stacked copies of Z)."""
    Phi = np.zeros((4 * n, 4 * n))
    Phi[0 * n : 1 * n, 0 * n : 1 * n] = np.eye(n)        # X1 <- x1
    Phi[1 * n : 2 * n, 2 * n : 3 * n] = np.eye(n)        # X2 <- x2
    Phi[2 * n : 3 * n, 1 * n : 2 * n] = np.eye(n)        # P1 <- p1
    Phi[3 * n : 4 * n, 3 * n : 4 * n] = -np.eye(n)       # P2 <- -p2
    return Phi


def diagonal_frame(n: int) -> LagrangianFrame:
    """Image under Phi of the diagonal {(z, z)} of Z + Z."""
    D = np.vstack([np.eye(2 * n), np.eye(2 * n)])
    return LagrangianFrame(doubling_map(n) @ D)


def doubled_path(path: SymplecticPath) -> SymplecticPath:
    """Phi (I + S_t) Phi^{-1} as a refinable path in Sp(4n)."""
    n = path.n
    Phi = doubling_map(n)
    PhiT = Phi.T  # Phi is orthogonal

    def wrap(leg):
        def dleg(t: float) -> np.ndarray:
            S = leg(t)
            D = np.zeros((4 * n, 4 * n))
            D[: 2 * n, : 2 * n] = np.eye(2 * n)
            D[2 * n :, 2 * n :] = S
            return Phi @ D @ PhiT

        return dleg

    return SymplecticPath([wrap(leg) for leg in path.legs], 2 * n)


def nu_via_doubled(
    path_lift: SymplecticPathLift,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT.tol,
) -> NuValue:
    """nu(S_inf) = mu_Delta((I + S)_inf) / 2 in the doubled space.

    Defined for every endpoint (no nondegeneracy needed); a non-integer
    half signals a convention bug and raises.

    Orientation: the doubled form is taken as (-sigma) + sigma. With the
    opposite choice every value negates, which breaks both the free-matrix
    formula and the identification of i^nu as the metaplectic Weyl-symbol
    phase (R_nu(J) = J-hat forces nu = -1 mod 4 on the quarter rotation by
    direct Fresnel algebra). Computationally: transport in the
    sigma + (-sigma) model and negate.
    """
    if path_lift.path is None:
        raise SearchError("doubled route needs a refinable path")
    dpath = SymplecticPathLift(doubled_path(path_lift.path), path_lift.base_samples)
    mu = maslov_mu_ell(dpath, diagonal_frame(path_lift.n), rng, tol)
    if mu % 2:
        raise IntegralityError(f"doubled-route Maslov index {mu} is odd")
    return NuValue(-mu // 2, "doubled")


def nu_via_free(
    path_lift: SymplecticPathLift,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT.tol,
) -> NuValue:
    """nu = (mu_{X*}(S_inf) + sign W_S)/2 for free endpoints with
    det(S - I) != 0."""
    S = path_lift.endpoint()
    n = path_lift.n
    if abs(np.linalg.det(blocks(S)[1])) <= tol.free_b:
        raise NotFreeError("free-route nu needs a free endpoint")
    d = float(np.linalg.det(S - np.eye(2 * n)))
    if abs(d) <= tol.det_si:
        raise DegenerateFixedPointError("free-route nu needs det(S-I) != 0", d)
    mu = maslov_mu_ell(path_lift, x_star_frame(n), rng, tol)
    sgn = signature(hessian_ws(S, tol), tol=tol)
    val = 0.5 * (mu + sgn)
    return NuValue(assert_integer(val, "nu (free route)", tol), "free")


def nu(
    path_lift: SymplecticPathLift,
    route: str = "both",
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT.tol,
) -> NuValue:
    """Front door: route in {"free", "doubled", "both"}. With "both" the two
    values must agree exactly (disagreement is a hard failure)."""
    if route == "doubled":
        return nu_via_doubled(path_lift, rng, tol)
    if route == "free":
        return nu_via_free(path_lift, rng, tol)
    if route != "both":
        raise ValueError(f"unknown route {route!r}")
    ref = nu_via_doubled(path_lift, rng, tol)
    fast = nu_via_free(path_lift, rng, tol)
    if ref.value != fast.value:
        raise IntegralityError(
            f"nu route disagreement: doubled {ref.value}, free {fast.value}"
        )
    return NuValue(ref.value, "both")


def nu_antisymmetry_check(
    path_lift: SymplecticPathLift,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT.tol,
) -> bool:
    """nu(S_inf^{-1}) = -nu(S_inf), with the pointwise-inverse path lift."""
    direct = nu_via_doubled(path_lift, rng, tol).value
    inverse = nu_via_doubled(path_lift.inverse(), rng, tol).value
    return direct + inverse == 0


def nu_of_product(
    nu1: int,
    nu2: int,
    S: np.ndarray,
    Sp: np.ndarray,
    tol: Tolerances = DEFAULT.tol,
) -> int:
    """nu'' = nu + nu' + sign(M_S + M_{S'})/2, requiring all three
    determinants det(S-I), det(S'-I), det(SS'-I) nonzero."""
    for name, T in (("S", S), ("S'", Sp), ("SS'", S @ Sp)):
        d = float(np.linalg.det(T - np.eye(T.shape[0])))
        if abs(d) <= tol.det_si:
            raise DegenerateFixedPointError(f"det({name} - I) vanishes", d)
    Msum = cayley_transform(S, tol) + cayley_transform(Sp, tol)
    tri = signature(Msum, tol=tol)
    if tri % 2:
        raise IntegralityError("sign(M_S + M_{S'}) is odd; half-phase would not cancel")
    return nu1 + nu2 + tri // 2


def nu_locally_constant_check(
    path_lift: SymplecticPathLift,
    S_target: np.ndarray,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT.tol,
    probe_points: int = 17,
) -> bool:
    """nu is constant along continuations inside one of Sp+/Sp-.

    Connects endpoint(S) to S_target by the convex path in Hamiltonian
    logarithm coordinates, checks det(S(t) - I) never changes sign on the
    probe grid, extends the lift and compares nu values.
    """
    S = path_lift.endpoint()
    n = path_lift.n
    d0 = float(np.linalg.det(S - np.eye(2 * n)))
    d1 = float(np.linalg.det(S_target - np.eye(2 * n)))
    if d0 * d1 <= 0 or min(abs(d0), abs(d1)) <= tol.det_si:
        raise SearchError("endpoints not strictly inside one component of Sp+-")
    J = standard_j(n)
    # Hamiltonian logs: S = exp(J H) with H = -J log S (principal real log)
    H0 = _hamiltonian_log(S, J)
    H1 = _hamiltonian_log(S_target, J)

    def leg(t: float) -> np.ndarray:
        return expm(J @ ((1.0 - t) * H0 + t * H1))

    # the leg starts at exp(J H0); match it to the existing endpoint
    if np.abs(leg(0.0) - S).max() > 1e-8:
        raise SearchError("Hamiltonian log does not reproduce the endpoint")
    for t in np.linspace(0.0, 1.0, probe_points):
        d = float(np.linalg.det(leg(float(t)) - np.eye(2 * n)))
        if d * d0 <= 0:
            raise SearchError(f"connecting path leaves the component at t={t:.3f}")
    if path_lift.path is None:
        raise SearchError("local-constancy check needs a refinable path")
    extended = SymplecticPathLift(path_lift.path.extended_to(leg), path_lift.base_samples)
    return (
        nu_via_doubled(extended, rng, tol).value
        == nu_via_doubled(path_lift, rng, tol).value
    )


def _hamiltonian_log(S: np.ndarray, J: np.ndarray) -> np.ndarray:
    from scipy.linalg import logm

    X = logm(S)
    if np.abs(X.imag).max() > 1e-8:
        raise SearchError("matrix has no real logarithm; cannot build convex path")
    H = -J @ X.real
    H = 0.5 * (H + H.T)
    return H


def nu_mod4(
    word,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT.tol,
) -> int:
    """Conley--Zehnder class mod 4 of a metaplectic element given as a word.

    The word fixes one of the two Sp_inf classes mod alpha^2 through its
    Maslov index m-hat; any path lift to the projection is taken and
    corrected by one alpha turn when its reduced Maslov index lands in the
    other class. Well-definedness modulo alpha^2 (shift by 4) is exercised
    in the tests.

    The word object must expose n, matrix() and m_hat() (duck-typed so the
    metaplectic module can pass its own word types).
    """
    from .lagmaslov import reduced_m_ell
    from .sympcore import alpha_loop, path_to

    S = np.asarray(word.matrix(), dtype=float)
    n = word.n
    d = float(np.linalg.det(S - np.eye(2 * n)))
    if abs(d) <= tol.det_si:
        raise DegenerateFixedPointError("nu-hat needs det(S - I) != 0", d)
    path = path_to(S, tol)
    lift = SymplecticPathLift(path)
    m_lift = reduced_m_ell(lift, x_star_frame(n), rng, tol) % 4
    m_word = word.m_hat() % 4
    if (m_lift - m_word) % 2:
        raise IntegralityError(
            f"word Maslov class {m_word} and path class {m_lift} differ in parity"
        )
    if m_lift != m_word:
        # wrong sheet: one alpha turn moves m by 2 and nu by 2
        lift = SymplecticPathLift(alpha_loop(n).then(path))
        m_lift = reduced_m_ell(lift, x_star_frame(n), rng, tol) % 4
        if m_lift != m_word:
            raise SearchError("could not align the path lift with the word's sheet")
    return nu_via_doubled(lift, rng, tol).value % 4
