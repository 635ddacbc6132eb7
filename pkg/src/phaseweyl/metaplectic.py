"""Metaplectic generators and words on FFT grids, their Gaussian twisted
symbols with the closed composition law, and the nu-indexed operators
R_nu(S).

Grid realization: a quadratic Fourier transform

    S_{W,m} f(x) = (2 pi i)^{-n/2} i^m sqrt|det L| Int exp(i W(x,x')) f(x') dx'

is applied as chirp -> scaled Fourier stage -> chirp (one Bluestein
transform), with the dense kernel kept as a small-N oracle. R_nu(S) is
applied through its exact integral kernel, obtained by doing the momentum
half of the defining phase-space integral in closed form (a Fresnel
integral with matrix (M_S)_pp); truncated tensor quadrature of the raw
Bochner integrand converges far too slowly for the tolerances in play.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (
    DegenerateCompositionError,
    DegenerateFixedPointError,
    DimensionError,
    IntegralityError,
    NotFreeError,
    ResolutionError,
    SearchError,
    SingularMatrixError,
)
from .grids import Axis, GridFunctionX, GridFunctionZ, grid_ft
from .numkit import check_symmetric, inertia, signature
from .sympcore import (
    GeneratingFunction,
    blocks,
    cayley_inverse,
    cayley_of_product,
    cayley_transform,
    check_symplectic,
    free_from_generating,
    generating_from_free,
    hessian_ws,
    standard_j,
)

__all__ = [
    "QuadraticFourierTransform",
    "VP",
    "ML",
    "JFactor",
    "PrimitiveWord",
    "QFTWord",
    "apply_vp",
    "apply_j",
    "apply_j_inverse",
    "apply_ml",
    "apply_swm",
    "apply_swm_dense",
    "factor_swm",
    "GaussianTwistedSymbol",
    "PlainWeylSymbol",
    "twisted_symbol",
    "plain_weyl_symbol",
    "compose_twisted",
    "r_nu_apply",
    "compose_qft",
    "free_pair_factorization",
    "nu_of_qft",
    "nu_of_word",
    "maslov_hat_m",
    "random_qft",
]


# ---------------------------------------------------------------------------
# quadratic Fourier transforms and primitive factors


@dataclass(frozen=True)
class QuadraticFourierTransform:
    """Generator S_{W,m}: a free generating function plus the metaplectic
    branch index m (mod 4), with m pi = arg det L mod 2 pi."""

    W: GeneratingFunction
    m: int

    def __post_init__(self):
        det_l = float(np.linalg.det(self.W.L))
        if (self.m % 2 == 0) != (det_l > 0):
            raise IntegralityError(
                f"m = {self.m} has the wrong parity for det L = {det_l:.3e}"
            )
        object.__setattr__(self, "m", self.m % 4)

    @property
    def n(self) -> int:
        return self.W.n

    def matrix(self) -> np.ndarray:
        return free_from_generating(self.W)

    def m_hat(self) -> int:
        return self.m % 4

    def inverse_primitives(self) -> list:
        """S_{W,m}^{-1} = V_Q J^{-1} M_{L^{-1},-m} V_P."""
        return [
            VP(self.W.Q),
            JFactor(inverse=True),
            ML(np.linalg.inv(self.W.L), -self.m),
            VP(self.W.P),
        ]


@dataclass(frozen=True)
class VP:
    """Chirp factor V_P f = exp(-i<Px,x>/2) f."""

    P: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "P", check_symmetric(self.P, what="V_P matrix"))

    @property
    def n(self) -> int:
        return self.P.shape[0]

    def matrix(self) -> np.ndarray:
        n = self.n
        S = np.eye(2 * n)
        S[n:, :n] = -self.P
        return S

    def apply(self, f: GridFunctionX) -> GridFunctionX:
        return apply_vp(self.P, f)

    def inverse(self) -> "VP":
        return VP(-self.P)


@dataclass(frozen=True)
class ML:
    """Scaling factor M_{L,m} f = i^m sqrt|det L| f(Lx)."""

    L: np.ndarray
    m: int

    def __post_init__(self):
        L = np.asarray(self.L, dtype=float)
        det_l = float(np.linalg.det(L))
        if abs(det_l) < DEFAULT.tol.free_b:
            raise SingularMatrixError("M_L needs invertible L")
        if (self.m % 2 == 0) != (det_l > 0):
            raise IntegralityError(f"m = {self.m} parity inconsistent with det L")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "m", self.m % 4)

    @property
    def n(self) -> int:
        return self.L.shape[0]

    def matrix(self) -> np.ndarray:
        n = self.n
        S = np.zeros((2 * n, 2 * n))
        S[:n, :n] = np.linalg.inv(self.L)
        S[n:, n:] = self.L.T
        return S

    def apply(self, f: GridFunctionX) -> GridFunctionX:
        return apply_ml(self.L, self.m, f)

    def inverse(self) -> "ML":
        return ML(np.linalg.inv(self.L), -self.m)


@dataclass(frozen=True)
class JFactor:
    """The Fourier generator J-hat (or its inverse)."""

    inverse: bool = False
    n_hint: int = 1

    @property
    def n(self) -> int:
        return self.n_hint

    def matrix(self) -> np.ndarray:
        J = standard_j(self.n_hint)
        return -J if self.inverse else J

    def apply(self, f: GridFunctionX) -> GridFunctionX:
        return apply_j_inverse(f) if self.inverse else apply_j(f)

    def inverse_factor(self) -> "JFactor":
        return JFactor(not self.inverse, self.n_hint)


@dataclass
class PrimitiveWord:
    """Ordered product of primitive factors; factors[0] acts last."""

    factors: list
    n: int

    def matrix(self) -> np.ndarray:
        S = np.eye(2 * self.n)
        for fac in self.factors:
            S = S @ self._sized(fac).matrix()
        return check_symplectic(S)

    def apply(self, f: GridFunctionX) -> GridFunctionX:
        for fac in reversed(self.factors):
            fac = self._sized(fac)
            f = fac.apply(f)
        return f

    def inverse(self) -> "PrimitiveWord":
        inv = []
        for fac in reversed(self.factors):
            fac = self._sized(fac)
            if isinstance(fac, JFactor):
                inv.append(fac.inverse_factor())
            else:
                inv.append(fac.inverse())
        return PrimitiveWord(inv, self.n)

    def _sized(self, fac):
        if isinstance(fac, JFactor) and fac.n_hint != self.n:
            return JFactor(fac.inverse, self.n)
        return fac


# ---------------------------------------------------------------------------
# grid actions


def _axes_meshes(f: GridFunctionX):
    return f.meshes()


def _quad_form_values(M: np.ndarray, meshes) -> np.ndarray:
    n = len(meshes)
    out = 0.0
    for i in range(n):
        for j in range(n):
            out = out + M[i, j] * meshes[i] * meshes[j]
    return out


def apply_vp(P: np.ndarray, f: GridFunctionX) -> GridFunctionX:
    P = check_symmetric(P, what="V_P matrix")
    q = _quad_form_values(P, f.meshes())
    return f.with_values(f.values * np.exp(-0.5j * q))


def _fourier_stage(f: GridFunctionX, scales: np.ndarray, sign_base: int) -> GridFunctionX:
    """Per-axis transforms Int exp(sign_base * i * s_a * x_a * x'_a) along each
    axis a, output sampled on the scaled copies of the input axes."""
    values = f.values
    for a, ax in enumerate(f.axes):
        s = float(scales[a])
        out_ax = Axis(ax.center * abs(s), ax.halfwidth * abs(s), ax.points)
        eff_sign = sign_base if s > 0 else -sign_base
        values = grid_ft(values, ax, out_ax, sign=eff_sign, axis=a)
    return f.with_values(values)


def apply_j(f: GridFunctionX) -> GridFunctionX:
    """J-hat f(x) = (2 pi i)^{-n/2} Int exp(-i<x,x'>) f(x') dx'."""
    n = f.n
    g = _fourier_stage(f, np.ones(n), sign_base=-1)
    const = (2.0 * np.pi) ** (-0.5 * n) * np.exp(-0.25j * np.pi * n)
    return g.with_values(const * g.values)


def apply_j_inverse(f: GridFunctionX) -> GridFunctionX:
    n = f.n
    g = _fourier_stage(f, np.ones(n), sign_base=+1)
    const = (2.0 * np.pi) ** (-0.5 * n) * np.exp(0.25j * np.pi * n)
    return g.with_values(const * g.values)


def _diagonal_scales(L: np.ndarray) -> np.ndarray:
    L = np.asarray(L, dtype=float)
    if L.shape[0] > 1 and np.abs(L - np.diag(np.diag(L))).max() > 1e-12:
        raise DimensionError("fast scaling stage needs n = 1 or diagonal L")
    return np.diag(L).astype(float)


def apply_mlj(L: np.ndarray, m: int, f: GridFunctionX) -> GridFunctionX:
    """(M_{L,m} J-hat) f(x) = i^m sqrt|det L| (J-hat f)(Lx), realized as one
    scaled Fourier stage with kernel exp(-i<Lx,x'>)."""
    scales = _diagonal_scales(L)
    g = _fourier_stage(f, scales, sign_base=-1)
    n = f.n
    const = (
        (1j ** (m % 4))
        * np.sqrt(abs(np.linalg.det(L)))
        * (2.0 * np.pi) ** (-0.5 * n)
        * np.exp(-0.25j * np.pi * n)
    )
    return g.with_values(const * g.values)


def apply_ml(L: np.ndarray, m: int, f: GridFunctionX) -> GridFunctionX:
    scales = _diagonal_scales(L)
    if np.allclose(scales, 1.0, atol=1e-14):
        return f.with_values((1j ** (m % 4)) * f.values)
    return apply_mlj(L, m, apply_j_inverse(f))


def qft_nyquist_margin(qft: QuadraticFourierTransform, axes, band: float = 10.0) -> float:
    """Usable-band margin (rad per unit) of the chirp/scale stages of one
    generator on the given axes; negative means the grid cannot resolve it."""
    h = max(ax.halfwidth for ax in axes)
    nyq = min(ax.nyquist for ax in axes) * DEFAULT.tol.nyquist_frac
    gP = float(np.abs(qft.W.P).sum(axis=1).max()) * h
    gQ = float(np.abs(qft.W.Q).sum(axis=1).max()) * h
    gL = float(np.abs(qft.W.L).sum(axis=0).max()) * h
    return nyq - max(gP, gQ + gL + band)


def apply_swm(
    qft: QuadraticFourierTransform,
    f: GridFunctionX,
    band: float = 10.0,
    check: bool = True,
) -> GridFunctionX:
    """Fast (chirp, scaled transform, chirp) action of S_{W,m}."""
    if check and qft_nyquist_margin(qft, f.axes, band) < 0.0:
        raise ResolutionError("grid cannot resolve the chirps of this generator")
    g = apply_vp(-qft.W.Q, f)
    g = apply_mlj(qft.W.L, qft.m, g)
    return apply_vp(-qft.W.P, g)


def apply_swm_dense(qft: QuadraticFourierTransform, f: GridFunctionX) -> GridFunctionX:
    """Dense-kernel oracle (n = 1 only): direct quadrature of the defining
    integral."""
    if f.n != 1:
        raise DimensionError("dense oracle is 1-d")
    x = f.axes[0].grid()
    W = qft.W.value(x[:, None], x[None, :])
    const = (
        (2.0 * np.pi) ** -0.5
        * np.exp(-0.25j * np.pi)
        * (1j ** (qft.m % 4))
        * np.sqrt(abs(np.linalg.det(qft.W.L)))
    )
    K = const * np.exp(1j * W) * f.axes[0].step
    return f.with_values(K @ f.values)


def factor_swm(qft: QuadraticFourierTransform) -> PrimitiveWord:
    """S_{W,m} = V_{-P} M_{L,m} J V_{-Q} as an explicit four-factor word."""
    return PrimitiveWord(
        [VP(-qft.W.P), ML(qft.W.L, qft.m), JFactor(n_hint=qft.n), VP(-qft.W.Q)],
        qft.n,
    )


# ---------------------------------------------------------------------------
# Gaussian symbols


@dataclass(frozen=True)
class GaussianTwistedSymbol:
    """Twisted Weyl symbol i^nu |det(S-I)|^{-1/2} exp(i<Mz,z>/2) of a
    metaplectic operator with projection S, M = Cayley transform of S."""

    nu: int
    amplitude: float
    M: np.ndarray

    @property
    def n(self) -> int:
        return self.M.shape[0] // 2

    def matrix(self) -> np.ndarray:
        return cayley_inverse(self.M)

    def conjugated(self) -> "GaussianTwistedSymbol":
        """Symbol of the adjoint (= inverse) operator."""
        return GaussianTwistedSymbol((-self.nu) % 4, self.amplitude, -self.M)

    def sample(self, axes: Sequence[Axis]) -> GridFunctionZ:
        g = GridFunctionZ(tuple(axes), np.zeros(tuple(ax.points for ax in axes)))
        q = _quad_form_values(self.M, g.meshes())
        vals = (1j ** (self.nu % 4)) * self.amplitude * np.exp(0.5j * q)
        return g.with_values(vals)


@dataclass(frozen=True)
class PlainWeylSymbol:
    """Plain (un-twisted) Weyl symbol coeff * exp(i<Gz,z>/2)."""

    coeff: complex
    G: np.ndarray


def twisted_symbol(S: np.ndarray, nu: int, tol: Tolerances = DEFAULT.tol) -> GaussianTwistedSymbol:
    S = check_symplectic(S, tol)
    d = float(np.linalg.det(S - np.eye(S.shape[0])))
    if abs(d) <= tol.det_si:
        raise DegenerateFixedPointError("twisted symbol undefined", d)
    return GaussianTwistedSymbol(nu % 4, abs(d) ** -0.5, cayley_transform(S, tol))


def plain_weyl_symbol(S: np.ndarray, nu: int, tol: Tolerances = DEFAULT.tol) -> PlainWeylSymbol:
    """Symplectic Fourier transform of the twisted symbol, in closed form:

        a(z) = i^{nu + sign(M_S)/2} |det(S-I) det M_S|^{-1/2}
               * exp(i <J M_S^{-1} J z, z>/2).

    Requires det(S+I) != 0 on top of det(S-I) != 0 (M_S singular otherwise).
    """
    from .errors import SymbolValidityError

    S = check_symplectic(S, tol)
    n = S.shape[0] // 2
    d_minus = float(np.linalg.det(S - np.eye(2 * n)))
    d_plus = float(np.linalg.det(S + np.eye(2 * n)))
    if abs(d_minus) <= tol.det_si:
        raise DegenerateFixedPointError("plain symbol needs det(S-I) != 0", d_minus)
    if abs(d_plus) <= tol.det_si:
        raise SymbolValidityError(
            f"plain symbol invalid: -1 is an eigenvalue of S (det(S+I) = {d_plus:.2e})"
        )
    M = cayley_transform(S, tol)
    sgn = signature(M, tol=tol)
    if sgn % 2:
        raise IntegralityError("sign(M_S) is odd")
    J = standard_j(n)
    G = check_symmetric(J @ np.linalg.solve(M, J), 1e-7, "J M^{-1} J")
    coeff = (1j ** ((nu + sgn // 2) % 4)) / np.sqrt(
        abs(d_minus) * abs(np.linalg.det(M))
    )
    return PlainWeylSymbol(complex(coeff), G)


def compose_twisted(
    a: GaussianTwistedSymbol, b: GaussianTwistedSymbol, tol: Tolerances = DEFAULT.tol
) -> GaussianTwistedSymbol:
    """Closed-form twisted convolution of two metaplectic Gaussian symbols:

        nu'' = nu + nu' + sign(M_S + M_{S'})/2,  M'' = M_{SS'},

    with the amplitude identity |det[(M+M')(S-I)(S'-I)]| = |det(SS'-I)|
    asserted along the way.
    """
    S = a.matrix()
    Sp = b.matrix()
    n = a.n
    I = np.eye(2 * n)
    d_prod = float(np.linalg.det(S @ Sp - I))
    if abs(d_prod) <= tol.det_si:
        raise DegenerateCompositionError(f"det(SS' - I) = {d_prod:.3e} vanishes")
    Msum = a.M + b.M
    sgn = signature(Msum, tol=tol)
    if sgn % 2:
        raise IntegralityError("sign(M_S + M_{S'}) odd: phase would be half-integer")
    lhs = abs(
        np.linalg.det(Msum) * np.linalg.det(S - I) * np.linalg.det(Sp - I)
    )
    if abs(lhs - abs(d_prod)) > 1e-9 * max(1.0, abs(d_prod)):
        raise DegenerateCompositionError(
            f"amplitude identity violated: {lhs:.12e} vs {abs(d_prod):.12e}"
        )
    M_prod = cayley_of_product(S, Sp, tol)
    nu_out = (a.nu + b.nu + sgn // 2) % 4
    return GaussianTwistedSymbol(nu_out, abs(d_prod) ** -0.5, M_prod)


# ---------------------------------------------------------------------------
# R_nu(S) on grids


def r_nu_kernel(sym: GaussianTwistedSymbol, axis: Axis, tol: Tolerances = DEFAULT.tol) -> np.ndarray:
    """Exact integral kernel of R_nu(S) on a 1-d grid (see module docstring).

    K(x, y) = c exp(i<M11 u, u>/2) exp(-i<M22^{-1} v, v>/2),
    u = x - y, v = M12^T u + (x + y)/2,
    c = i^nu |det(S-I)|^{-1/2} (2 pi)^{-n/2} |det M22|^{-1/2}
        exp(i pi sign(M22)/4).
    """
    n = sym.n
    if n != 1:
        raise DimensionError("R_nu kernel implemented for n = 1")
    M = sym.M
    M11, M12, M22 = M[:n, :n], M[:n, n:], M[n:, n:]
    tri = inertia(M22, tol=tol)
    if tri.n_zero:
        raise NotFreeError(
            "kernel route needs the momentum block of M_S invertible (S free)"
        )
    x = axis.grid()
    u = x[:, None] - x[None, :]
    v = float(M12[0, 0]) * u + 0.5 * (x[:, None] + x[None, :])
    phase = 0.5 * float(M11[0, 0]) * u * u - 0.5 * v * v / float(M22[0, 0])
    # resolve the chirp where the operand carries mass (the battery states
    # live well inside 0.7 * halfwidth); the outer columns only ever multiply
    # the operand's tail
    bulk = np.abs(x - axis.center) <= 0.7 * axis.halfwidth
    grad = np.abs(np.gradient(phase, axis.step, axis=1))[:, bulk].max()
    if grad > DEFAULT.tol.nyquist_frac * axis.nyquist:
        raise ResolutionError(
            f"R_nu kernel chirp gradient {grad:.1f} exceeds the usable band"
        )
    c = (
        (1j ** (sym.nu % 4))
        * sym.amplitude
        * (2.0 * np.pi) ** (-0.5 * n)
        * abs(float(M22[0, 0])) ** -0.5
        * np.exp(0.25j * np.pi * tri.signature)
    )
    return c * np.exp(1j * phase) * axis.step


def r_nu_apply(
    sym: GaussianTwistedSymbol, f: GridFunctionX, tol: Tolerances = DEFAULT.tol
) -> GridFunctionX:
    """Discretized R_nu(S) f. S ~ -I degenerates to the parity operator
    i^nu f(-x), which is applied exactly."""
    if f.n != sym.n:
        raise DimensionError("symbol and grid dimension differ")
    if np.abs(sym.M).max() < 1e-12:
        vals = f.values
        for a in range(f.values.ndim):
            vals = np.roll(np.flip(vals, axis=a), 1, axis=a)
        return f.with_values((1j ** (sym.nu % 4)) * vals)
    K = r_nu_kernel(sym, f.axes[0], tol)
    return f.with_values(K @ f.values)


# ---------------------------------------------------------------------------
# composition bookkeeping on words


def compose_qft(
    q1: QuadraticFourierTransform,
    q2: QuadraticFourierTransform,
    tol: Tolerances = DEFAULT.tol,
) -> QuadraticFourierTransform:
    """Single generator equal to the product S_{W,m} S_{W',m'} when the
    product matrix is free: m'' = m + m' - Inert(P' + Q) mod 4, Inert
    counting negative eigenvalues (grid-anchored convention)."""
    S = q1.matrix() @ q2.matrix()
    if abs(np.linalg.det(blocks(S)[1])) <= 1e-8:
        raise NotFreeError("product of generators is not free")
    lam = inertia(q2.W.P + q1.W.Q, tol=tol)
    if lam.n_zero:
        raise SingularMatrixError("P' + Q singular: composition index undefined")
    W = generating_from_free(S, tol)
    return QuadraticFourierTransform(W, (q1.m + q2.m - lam.n_minus) % 4)


@dataclass
class QFTWord:
    """Ordered product of quadratic Fourier transforms (factors[0] acts
    last); the word form every index computation works on."""

    factors: list

    def __post_init__(self):
        if not self.factors:
            raise DimensionError("empty word")

    @property
    def n(self) -> int:
        return self.factors[0].n

    def matrix(self) -> np.ndarray:
        S = np.eye(2 * self.n)
        for q in self.factors:
            S = S @ q.matrix()
        return S

    def apply(self, f: GridFunctionX, band: float = 10.0) -> GridFunctionX:
        for q in reversed(self.factors):
            f = apply_swm(q, f, band)
        return f

    def apply_inverse(self, f: GridFunctionX) -> GridFunctionX:
        for q in self.factors:
            for fac in reversed(q.inverse_primitives()):
                f = fac.apply(f)
        return f

    def reduced(self, tol: Tolerances = DEFAULT.tol) -> "QFTWord":
        """Greedy reduction to at most two factors by composing adjacent
        pairs with free products; words that cannot be reduced are flagged."""
        facs = list(self.factors)
        while len(facs) > 2:
            for i in range(len(facs) - 1):
                try:
                    merged = compose_qft(facs[i], facs[i + 1], tol)
                except (NotFreeError, SingularMatrixError):
                    continue
                facs[i : i + 2] = [merged]
                break
            else:
                raise SearchError("word is not reducible to two generators")
        return QFTWord(facs)

    def m_hat(self, tol: Tolerances = DEFAULT.tol) -> int:
        red = self.reduced(tol)
        if len(red.factors) == 1:
            return red.factors[0].m % 4
        q1, q2 = red.factors
        lam = inertia(q2.W.P + q1.W.Q, tol=tol)
        if lam.n_zero:
            raise SingularMatrixError("P' + Q singular: m-hat undefined on this form")
        return (q1.m + q2.m - lam.n_minus) % 4


def nu_of_qft(qft: QuadraticFourierTransform, tol: Tolerances = DEFAULT.tol) -> int:
    """nu(S-hat) mod 4 of a single generator: the phase bookkeeping of the
    Weyl-symbol identification gives nu = m - n/2 + sign(W_S)/2 (an integer,
    since W_S has full rank n)."""
    Ws = qft.W.hessian_diag()
    tri = inertia(Ws, tol=tol)
    if tri.n_zero:
        raise DegenerateFixedPointError(
            "det(S_W - I) = 0: nu undefined for this generator"
        )
    if (tri.signature - qft.n) % 2:
        raise IntegralityError("sign(W_S) - n is odd")
    return (qft.m + (tri.signature - qft.n) // 2) % 4


def free_pair_factorization(
    q1: QuadraticFourierTransform,
    q2: QuadraticFourierTransform,
    candidates: int = 32,
    min_det: float = 1e-6,
    tol: Tolerances = DEFAULT.tol,
) -> tuple[QuadraticFourierTransform, QuadraticFourierTransform, float]:
    """Shift lambda between the inner chirps (Q -> Q - lambda, P' -> P' +
    lambda) so both factors satisfy det(S_W - I) != 0; the operator product
    is unchanged exactly. Scans a fixed candidate grid in [-2, 2] and keeps
    the best-conditioned shift (lambda = 0 kept when already admissible)."""
    n = q1.n
    I = np.eye(n)

    def dets(lam: float) -> float:
        d1 = np.linalg.det(q1.W.hessian_diag() - lam * I)
        d2 = np.linalg.det(q2.W.hessian_diag() + lam * I)
        return float(min(abs(d1), abs(d2)))

    if dets(0.0) >= min_det:
        return q1, q2, 0.0
    grid = np.linspace(-2.0, 2.0, candidates)
    scores = [dets(float(l)) for l in grid]
    best = int(np.argmax(scores))
    if scores[best] < min_det:
        raise SearchError(
            f"no admissible lambda in the scan (best determinant {scores[best]:.2e})"
        )
    lam = float(grid[best])
    W1 = GeneratingFunction(P=q1.W.P, L=q1.W.L, Q=q1.W.Q - lam * I)
    W2 = GeneratingFunction(P=q2.W.P + lam * I, L=q2.W.L, Q=q2.W.Q)
    return (
        QuadraticFourierTransform(W1, q1.m),
        QuadraticFourierTransform(W2, q2.m),
        lam,
    )


def nu_of_word(word: QFTWord, tol: Tolerances = DEFAULT.tol) -> int:
    """nu(S-hat) mod 4 of a word: per-factor values from the generator
    formula combined through nu'' = nu + nu' + sign(M + M')/2, after the
    lambda shift has made both factors admissible. The phase congruence
    arg det(S - I) = (nu - n) pi mod 2 pi is asserted before returning."""
    red = word.reduced(tol)
    n = red.n
    S = red.matrix()
    d = float(np.linalg.det(S - np.eye(2 * n)))
    if abs(d) <= tol.det_si:
        raise DegenerateFixedPointError("nu-hat needs det(S - I) != 0", d)
    if len(red.factors) == 1:
        nu_val = nu_of_qft(red.factors[0], tol)
    else:
        qa, qb, _ = free_pair_factorization(*red.factors, tol=tol)
        Sa, Sb = qa.matrix(), qb.matrix()
        Msum = cayley_transform(Sa, tol) + cayley_transform(Sb, tol)
        sgn = signature(Msum, tol=tol)
        if sgn % 2:
            raise IntegralityError("sign(M + M') odd in nu-of-word")
        nu_val = (nu_of_qft(qa, tol) + nu_of_qft(qb, tol) + sgn // 2) % 4
    # arg det(S - I) is 0 or pi; the congruence pins nu mod 2
    if ((0 if d > 0 else 1) - (nu_val - n)) % 2:
        raise IntegralityError(
            f"Maslov phase congruence violated: det(S-I) = {d:.3e}, nu = {nu_val}"
        )
    return nu_val % 4


def maslov_hat_m(word: QFTWord, tol: Tolerances = DEFAULT.tol) -> int:
    return word.m_hat(tol)


# ---------------------------------------------------------------------------
# random instances


def random_qft(
    n: int,
    rng: np.random.Generator,
    chirp_scale: float = 0.8,
    l_range: tuple[float, float] = (0.8, 1.3),
    allow_reflection: bool = True,
) -> QuadraticFourierTransform:
    """Random generator with chirps mild enough for the default grids."""
    P = rng.uniform(-chirp_scale, chirp_scale, size=(n, n))
    Q = rng.uniform(-chirp_scale, chirp_scale, size=(n, n))
    diag = rng.uniform(*l_range, size=n)
    if allow_reflection:
        diag = diag * rng.choice([-1.0, 1.0], size=n)
    L = np.diag(diag)
    m0 = 0 if np.linalg.det(L) > 0 else 1
    m = (m0 + 2 * int(rng.integers(0, 2))) % 4
    return QuadraticFourierTransform(
        GeneratingFunction(P=0.5 * (P + P.T), L=L, Q=0.5 * (Q + Q.T)), m
    )
