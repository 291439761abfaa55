"""eulerlab: high-precision numerical verification of Euler-sum identities."""

from .errors import (
    AccelUnreliable, BranchWarning, CapExceeded, DepthUnsupported, DivergentIndex, DomainError,
    EulerLabError, NonConvergent, ParityError, PoleError, PrecisionLossError, RemovableSingularity,
    ZeroDivisor,
)
from .numerics import PrecisionContext, SeriesValue, parse_complex
from .series import TermSource, direct_sum, sum_alternating, sum_em
from .mzv import MZVIndex, mzv_eval
from .reduction import ZetaExpression

__all__ = [
    "EulerLabError",
    "DomainError",
    "PoleError",
    "ParityError",
    "DivergentIndex",
    "DepthUnsupported",
    "ZeroDivisor",
    "RemovableSingularity",
    "PrecisionLossError",
    "CapExceeded",
    "NonConvergent",
    "AccelUnreliable",
    "BranchWarning",
    "PrecisionContext",
    "SeriesValue",
    "parse_complex",
    "TermSource",
    "direct_sum",
    "sum_alternating",
    "sum_em",
    "MZVIndex",
    "mzv_eval",
    "ZetaExpression",
]

__version__ = "0.1.0"
