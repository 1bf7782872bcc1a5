"""Exception types shared across the package.

Two families matter to the CLI: ``InputError`` subclasses signal bad user
input (exit code 2), ``InternalInconsistency`` subclasses signal a violated
internal invariant, i.e. a bug (exit code 3).
"""


class Pi1Error(Exception):
    pass


class InputError(Pi1Error):
    """Invalid user-supplied data (rejected at validation)."""


class NonPrime(InputError):
    pass


class ReducibleModulus(InputError):
    pass


class UnsupportedField(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class InvalidSpec(InputError):
    pass


class NotCofinite(InputError):
    pass


class NotLocal(InputError):
    pass


class InvalidConstants(InputError):
    pass


class FieldMismatch(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class IllFounded(InputError):
    """A coproduct correction references a generator of equal or higher weight."""


class NonTerminating(Pi1Error):
    pass


class NotInvertible(InputError):
    pass


class SearchBudgetExceeded(Pi1Error):
    pass


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


class InternalInconsistency(Pi1Error):
    """Two independent computations of the same quantity disagree."""


class Unsolvable(InternalInconsistency):
    """A curve-extension step has no solution; contradicts the existence theorem."""


class ExpressionFailure(InternalInconsistency):
    """A curve element is not expressible in the p-power subalgebra."""


class IntegralityFailure(InternalInconsistency):
    """A Witt addition polynomial came out non-integral."""
