"""Typed error hierarchy.

Mathematical negatives (infeasibility, failed axiom checks) are *results*,
not exceptions; exceptions are reserved for ill-formed inputs and broken
preconditions.
"""


class CoembedError(Exception):
    """Base class for all errors raised by this package."""


class ScalarError(CoembedError):
    """Scalar cannot be represented in the requested field."""


class SeriesMismatchError(CoembedError):
    """hbar-series operands have different truncation orders or coefficient spaces."""


class PresentationError(CoembedError):
    """Ill-formed algebra presentation (names, kinds, relation shapes)."""


class NonConfluentError(PresentationError):
    """PBW rewriting rules failed the critical-triple confluence check."""


class RewriteBudgetError(CoembedError):
    """PBW rewriting exceeded its iteration budget; presentation is suspect."""


class UnsupportedKindError(CoembedError):
    """Operation not defined for this algebra kind."""


class AlgebraMismatchError(CoembedError):
    """Operands live over different algebras or scalar fields."""


class HomError(CoembedError):
    """Ill-formed homomorphism data (names, arities, missing witnesses)."""


class NotInDerPiError(CoembedError):
    """Derivation does not preserve the kernel ideal; pushforward undefined."""


class NonCommutingError(CoembedError):
    """The two vector fields of an exponential star product do not commute."""


class JacobiError(CoembedError):
    """Operation requires a Poisson structure whose Jacobi identity holds."""


class ParseError(CoembedError):
    """Expression syntax error; carries the source offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class InputError(CoembedError):
    """Malformed input document (JSON schema violations, unknown names)."""
