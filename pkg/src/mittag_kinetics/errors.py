"""Exception and warning types shared across the package."""


class MittagKineticsError(Exception):
    """Base class for all package errors."""


class DomainError(MittagKineticsError):
    """Input lies outside the domain an operation is willing to evaluate."""


class NonConvergence(MittagKineticsError):
    """A series did not meet its termination criterion within the term budget."""


class PoleError(MittagKineticsError):
    """Evaluation point coincides (within tolerance) with a pole."""


class TieError(MittagKineticsError):
    """Two rate parameters are too close for a partial-fraction split."""


class QuadratureFailure(MittagKineticsError):
    """Numerical integration could not reach the requested tolerance."""


class InversionFailure(MittagKineticsError):
    """Numerical Laplace inversion failed its node-doubling self-check."""


class StabilityError(MittagKineticsError):
    """A time step violates the explicit scheme's stability constraint."""


class SpecError(MittagKineticsError):
    """A problem-spec file is malformed or violates a type invariant."""


class InstabilityWarning(UserWarning):
    """A retained spatial mode has a negative stiffness and will grow in time."""
