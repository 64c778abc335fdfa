"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI:
    InvalidInputError      -> 2
    PrecisionExhaustedError -> 3
    BudgetExceededError    -> 4 (truncated reports also carry a flag)
"""


class TorusintError(Exception):
    pass


class InvalidInputError(TorusintError, ValueError):
    """Bad user input: malformed spec, zero polynomial, out-of-range parameter."""


class RankDeficiencyError(InvalidInputError):
    """A matrix expected to have full row rank does not."""


class PrecisionExhaustedError(TorusintError, RuntimeError):
    """The adaptive precision ladder hit its cap without certifying."""


class HypothesisViolationError(TorusintError):
    """A monomial in the curve coordinates is identically constant."""

    def __init__(self, witness, msg="monomial identically constant on the curve"):
        super().__init__(f"{msg}: exponent vector {witness}")
        self.witness = witness


class PoleError(TorusintError):
    """Evaluation hit (a ball containing) a zero of a denominator."""


class EmptyRegionError(TorusintError):
    """No conjugate of the point lies inside the target region."""


class InconsistentDecompositionError(TorusintError):
    """Internal consistency check of a multiplicative decomposition failed."""


class BudgetExceededError(TorusintError):
    """An enumeration exceeded its configured budget."""
