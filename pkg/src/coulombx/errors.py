"""Exception and warning types shared across the package."""

from __future__ import annotations


class CoulombxError(Exception):
    """Base class for all numerical errors raised by this package."""


class NonFiniteInputError(CoulombxError):
    """An argument contained a NaN or infinity.

    Non-finite inputs are rejected at the API boundary instead of being
    propagated, because a silently propagating NaN tends to mask
    branch-cut bugs.
    """


class PoleError(CoulombxError):
    """Evaluation requested exactly at a pole of the function."""


class DomainError(CoulombxError):
    """Arguments outside the mathematical domain of the operation."""


class EssentialSingularityError(CoulombxError):
    """Evaluation at (or construction of) the essential singularity
    of the Coulomb normalization in the wave-number plane."""


class ConvergenceError(CoulombxError):
    """A power series failed to converge within the term cap."""


class StepFailureError(CoulombxError):
    """The adaptive ODE integrator could not meet the error tolerance."""


class PathThroughOriginError(CoulombxError):
    """An integration path passes through (or too close to) rho = 0."""


class LowPrecisionWarning(UserWarning):
    """The angular momentum sits between the half-integer snap tolerance
    and the generic-formula comfort zone; the generic connection formulas
    lose roughly ``|sin(2*pi*ell)|**-1`` digits there."""


class AccuracyDomainWarning(UserWarning):
    """Arguments lie outside the documented accuracy domain of the
    double-precision power series (|rho| <= 30, |eta| <= 10, |ell| <= 10)."""
