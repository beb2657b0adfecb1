"""Exception hierarchy for numerical failures.

Everything raised on a numerical contract violation derives from
:class:`NumericalError`, so drivers can distinguish "bad input / bad
config" (ordinary ``ValueError``) from "the computation broke down".
"""


class NumericalError(Exception):
    """Base class for numerical failures raised by this package."""


class NonSymmetricError(NumericalError):
    """Matrix expected to be symmetric is not, beyond tolerance."""


class NegativeDiagonalError(NumericalError):
    """Residual diagonal went significantly negative: matrix is indefinite."""


class SingularSystemError(NumericalError):
    """Linear system is singular or numerically rank deficient."""


class BandedStructureError(NumericalError):
    """Matrix entries violate the declared band structure."""


class BadGridError(NumericalError):
    """Time grid is incompatible with the requested scheme."""


class NonFiniteStateError(NumericalError):
    """Integration produced NaN or Inf (step size too large / instability)."""


class GridMismatchError(NumericalError):
    """Operands live on different level grids."""


class IndivisibleGridError(NumericalError):
    """Step count is not divisible by the quadrature panel size."""


class UnsupportedOrderError(NumericalError):
    """Integration order outside the supported range 1..6."""


class ArithmeticDegenerateError(NumericalError):
    """Degenerate input for a log/ratio computation (e.g. zero error)."""


class EmptySelectionError(NumericalError):
    """Greedy selection could not pick a single snapshot."""


class IllConditionedError(NumericalError):
    """Selected snapshots are numerically linearly dependent."""


class OutOfDomainError(NumericalError):
    """Evaluation point outside the valid domain."""
