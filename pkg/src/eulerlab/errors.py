"""Exception hierarchy shared by every evaluator."""


class EulerLabError(Exception):
    """Base class for all errors raised by eulerlab."""


class DomainError(EulerLabError, ValueError):
    """An argument lies outside the region where the operation is defined."""


class PoleError(DomainError):
    """An argument sits exactly on a pole of the function being evaluated."""


class ParityError(DomainError):
    """Arguments have the wrong parity for a reduction formula."""


class DivergentIndex(DomainError):
    """A multiple zeta index whose leading slot makes the series diverge."""


class DepthUnsupported(DomainError):
    """Requested depth is beyond what the evaluator supports."""


class ZeroDivisor(DomainError):
    """A product factor vanishes at the requested parameter."""


class RemovableSingularity(DomainError):
    """A written formula has a vanishing denominator but a finite limit.

    Pass ``limit=True`` to the evaluator to go through the limit path.
    """


class PrecisionLossError(EulerLabError, ArithmeticError):
    """Requested accuracy cannot be delivered (near-pole argument, non-finite result)."""


class CapExceeded(PrecisionLossError):
    """An adaptive loop needed more terms than ``PrecisionContext.max_terms``."""


class NonConvergent(EulerLabError, ArithmeticError):
    """Series tail decay could not be established."""


class AccelUnreliable(EulerLabError, ArithmeticError):
    """Alternating-series acceleration disagreed with the direct oracle."""


class BranchWarning(UserWarning):
    """A logarithm argument crossed into the left half plane."""
