"""Numeric foundations: inertia of symmetric matrices, the closed-form
Fresnel integral, principal logarithms of unitaries, and continuous phase
lifting.

Everything here is a pure function of its arguments; the shared tolerance
record is passed explicitly (defaulting to the package-wide values).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (
    BranchCutError,
    IntegralityError,
    SingularMatrixError,
    SymmetryError,
    UndersamplingError,
)

__all__ = [
    "InertiaTriple",
    "PhaseTrack",
    "check_symmetric",
    "inertia",
    "signature",
    "fresnel_gaussian_ft",
    "unitary_log_trace",
    "lift_phase",
    "assert_integer",
]


@dataclass(frozen=True)
class InertiaTriple:
    """Eigenvalue counts (positive, negative, numerically zero)."""

    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def n(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero


@dataclass(frozen=True)
class PhaseTrack:
    """Unit-modulus samples together with a continuous lift of their argument."""

    samples: np.ndarray
    theta: np.ndarray

    @property
    def winding(self) -> float:
        return (self.theta[-1] - self.theta[0]) / (2.0 * np.pi)


def check_symmetric(M: np.ndarray, eps: float | None = None, what: str = "matrix") -> np.ndarray:
    """Validate symmetry and return the symmetrized array.

    The defect threshold is absolute, scaled up by the matrix magnitude for
    matrices with large entries.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SymmetryError(f"{what} is not square: shape {M.shape}")
    eps = DEFAULT.tol.sym if eps is None else eps
    scale = max(1.0, float(np.abs(M).max(initial=0.0)))
    defect = float(np.abs(M - M.T).max(initial=0.0))
    if defect > eps * scale:
        raise SymmetryError(f"{what} not symmetric: defect {defect:.3e} > {eps * scale:.3e}")
    return 0.5 * (M + M.T)


def inertia(M: np.ndarray, eps_rank: float | None = None, tol: Tolerances = DEFAULT.tol) -> InertiaTriple:
    """Count eigenvalues of a real symmetric matrix above, below and inside
    the threshold band [-eps, eps].

    By default eps = tol.rank_rel * |M|_2, which keeps the count stable for
    the well-separated spectra produced by the instance generators.
    """
    M = check_symmetric(M, tol.sym)
    if M.size == 0:
        return InertiaTriple(0, 0, 0)
    w = np.linalg.eigvalsh(M)
    if eps_rank is None:
        eps_rank = tol.rank_rel * max(1e-300, float(np.abs(w).max()))
    n_plus = int(np.sum(w > eps_rank))
    n_minus = int(np.sum(w < -eps_rank))
    return InertiaTriple(n_plus, n_minus, M.shape[0] - n_plus - n_minus)


def signature(M: np.ndarray, eps_rank: float | None = None, tol: Tolerances = DEFAULT.tol) -> int:
    return inertia(M, eps_rank, tol).signature


def fresnel_gaussian_ft(M: np.ndarray, v: np.ndarray, tol: Tolerances = DEFAULT.tol) -> complex:
    """Closed-form Fourier transform of u -> exp(i<Mu,u>/2) at v.

    Uses the (2*pi)^{-m/2} transform normalization, so the value is

        |det M|^{-1/2} exp(i*pi/4 * sign M) exp(-i<M^{-1}v, v>/2).

    M must be invertible; a zero eigenvalue (within the rank threshold)
    raises SingularMatrixError with a condition estimate.
    """
    M = check_symmetric(M, tol.sym, "Fresnel matrix")
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.shape != (M.shape[0],):
        raise SymmetryError(f"vector length {v.shape} incompatible with {M.shape}")
    tri = inertia(M, tol=tol)
    if tri.n_zero:
        w = np.abs(np.linalg.eigvalsh(M))
        cond = float(w.max() / max(w.min(), 1e-300))
        raise SingularMatrixError("Fresnel matrix is singular", cond)
    Minv_v = np.linalg.solve(M, v)
    phase = 0.25 * np.pi * tri.signature - 0.5 * float(v @ Minv_v)
    amp = abs(np.linalg.det(M)) ** -0.5
    return complex(amp * np.exp(1j * phase))


def unitary_log_trace(w: np.ndarray, eps_cut: float | None = None, tol: Tolerances = DEFAULT.tol) -> complex:
    """Trace of the principal matrix logarithm of a unitary matrix.

    Eigenvalue arguments are taken in (-pi, pi); an eigenvalue within
    eps_cut of the negative real axis raises BranchCutError (the ALM
    routine then falls back to the cocycle formula).
    """
    w = np.asarray(w, dtype=complex)
    defect = float(np.abs(w @ w.conj().T - np.eye(w.shape[0])).max())
    if defect > tol.unitary:
        raise SymmetryError(f"matrix not unitary: defect {defect:.3e}")
    eps_cut = tol.branch_cut if eps_cut is None else eps_cut
    lam = np.linalg.eigvals(w)
    if np.min(np.abs(lam + 1.0)) < eps_cut:
        raise BranchCutError(
            f"eigenvalue within {eps_cut:.1e} of the branch cut at -1"
        )
    return complex(1j * np.sum(np.angle(lam)))


def lift_phase(samples: np.ndarray, theta0: float | None = None, tol: Tolerances = DEFAULT.tol) -> PhaseTrack:
    """Continuously lift the argument of a sequence of unit complex numbers.

    theta[0] is the principal argument in (-pi, pi] unless theta0 is given
    (which must satisfy exp(i*theta0) = samples[0]). Consecutive samples
    must differ in argument by strictly less than pi.
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.ndim != 1 or samples.size == 0:
        raise UndersamplingError("need a non-empty 1-d sample sequence")
    mod_defect = float(np.abs(np.abs(samples) - 1.0).max())
    if mod_defect > tol.phase_mod:
        raise UndersamplingError(f"samples not unit modulus: defect {mod_defect:.3e}")
    dphi = np.angle(samples[1:] / samples[:-1])
    if dphi.size and float(np.abs(dphi).max()) >= np.pi * (1.0 - 1e-9):
        raise UndersamplingError(
            f"phase jump {np.abs(dphi).max():.6f} >= pi between consecutive samples"
        )
    start = float(np.angle(samples[0]))
    if start <= -np.pi:  # np.angle returns (-pi, pi]; guard the closed end
        start += 2.0 * np.pi
    theta = np.concatenate([[start], start + np.cumsum(dphi)])
    if theta0 is not None:
        shift = theta0 - start
        turns = shift / (2.0 * np.pi)
        if abs(turns - round(turns)) > tol.phase_fit:
            raise UndersamplingError(
                f"theta0={theta0} is not a lift of samples[0] (offset {shift:.3e})"
            )
        theta = theta + 2.0 * np.pi * round(turns)
    return PhaseTrack(samples=samples, theta=theta)


def assert_integer(x: float, what: str = "value", tol: Tolerances = DEFAULT.tol) -> int:
    """Round x to the nearest integer, failing hard if it drifted."""
    k = round(float(x))
    if abs(x - k) > tol.integer:
        raise IntegralityError(f"{what} = {x!r} is {abs(x - k):.2e} from an integer")
    return int(k)


def assert_half_integer(x: float, what: str = "value", tol: Tolerances = DEFAULT.tol) -> float:
    """Round x to the nearest half-integer, failing hard if it drifted."""
    return 0.5 * assert_integer(2.0 * x, what, tol)
