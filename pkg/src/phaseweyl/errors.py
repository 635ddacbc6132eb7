"""Exception types raised across the package.

Every precondition failure maps to a named error so callers (and the CLI)
can report what went wrong without parsing message strings.
"""


class PhaseweylError(Exception):
    """Base class for all package errors."""


class DimensionError(PhaseweylError):
    """Input has the wrong shape (odd dimension, mismatched sizes, ...)."""


class SymmetryError(PhaseweylError):
    """Matrix expected to be symmetric is not, beyond tolerance."""


class SingularMatrixError(PhaseweylError):
    """A matrix required to be invertible is numerically singular."""

    def __init__(self, msg, cond=None):
        super().__init__(msg if cond is None else f"{msg} (condition estimate {cond:.3e})")
        self.cond = cond


class BranchCutError(PhaseweylError):
    """Eigenvalue too close to the negative real axis for the principal log."""


class UndersamplingError(PhaseweylError):
    """Phase jump >= pi between consecutive samples; the path needs refining."""


class NotFreeError(PhaseweylError):
    """Symplectic matrix has singular upper-right block (no generating function)."""


class DegenerateFixedPointError(PhaseweylError):
    """det(S - I) vanishes; Cayley transform / twisted symbol undefined."""

    def __init__(self, msg, det=None):
        super().__init__(msg if det is None else f"{msg} (det(S-I) = {det:.3e})")
        self.det = det


class DegenerateCompositionError(PhaseweylError):
    """A factor in a composition formula is singular; the message names it."""


class TransversalityError(PhaseweylError):
    """Lagrangian planes required to be transversal intersect."""


class SearchError(PhaseweylError):
    """A randomized or scanned search (auxiliary plane, lambda shift, connecting
    path) exhausted its budget without an admissible candidate."""


class IntegralityError(PhaseweylError):
    """A quantity asserted to be an integer drifted beyond tolerance."""


class CommensurabilityError(PhaseweylError):
    """Requested translation does not snap to the grid within tolerance."""


class ResolutionError(PhaseweylError):
    """Grid cannot resolve the oscillations of a chirp (Nyquist violation)."""


class DomainSizeError(PhaseweylError):
    """Truncation box too small: estimated tail mass above tolerance."""


class SymbolValidityError(PhaseweylError):
    """Plain Weyl symbol requested for S with -1 as eigenvalue."""
