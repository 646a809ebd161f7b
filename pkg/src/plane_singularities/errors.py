"""Shared exception hierarchy (pure data, no I/O).

Every computational module raises one of these; only the CLI turns them into
exit codes and `{error, detail, location}` report objects, so no library code
depends on how a failure is presented.

Exit codes: 2 for bad input or an unmet precondition, 3 when the supplied
series precision cannot decide the answer, 4 when an internal invariant broke.
"""

EXIT_PRECONDITION = 2
EXIT_PRECISION = 3
EXIT_INTERNAL = 4


class SingularityError(Exception):
    """Base class; `exit_code` tells the CLI how to report it."""

    exit_code = EXIT_PRECONDITION

    def __init__(self, detail: str, location: str | None = None):
        super().__init__(detail)
        self.detail = detail
        self.location = location


class ParseError(SingularityError):
    """Input text does not match the grammar; `offset` is the byte offset."""

    def __init__(self, detail: str, offset: int):
        super().__init__(detail, location=f"offset {offset}")
        self.offset = offset


class UnknownVariable(ParseError):
    """A polynomial names a variable outside the allowed set."""


class NonPositiveRamification(SingularityError):
    """A branch was declared with x = t^d for d < 1."""


class WrongEntryCount(SingularityError):
    """A matrix literal does not carry exactly d*d entries."""


class NegativeExponent(SingularityError):
    """A matrix entry has a negative power of e (only integral matrices)."""


class PreconditionError(SingularityError):
    """An operation was called outside its documented domain."""


class DegenerateInput(PreconditionError):
    """Zero polynomial, empty pair list, or another degenerate argument."""


class SizeMismatch(PreconditionError):
    """Two data of different sizes were compared."""


class CapExceeded(PreconditionError):
    """A size cap (canonical form, miniversal family) was exceeded."""


class InvalidCharacteristic(PreconditionError):
    """Exponents or pairs violate the characteristic-sequence invariants."""


class NotRealizable(PreconditionError):
    """Root valuations that no sequence of characteristic pairs produces."""


class OrderBelowRamification(PreconditionError):
    """The y-order is below d; the parametrization needs inversion first."""


class NotDistinct(PreconditionError):
    """Two branches coincide (a pair of conjugates has certified-zero difference)."""


class NotRegularSemisimple(PreconditionError):
    """The characteristic polynomial has a certified repeated root."""


class NotIsolated(PreconditionError):
    """Local quotient dimensions keep growing: the singularity is not isolated."""


class IncompleteFactorization(PreconditionError):
    """Supplied branches do not account for every branch of the germ."""


class UnsupportedCoefficientField(PreconditionError):
    """An edge polynomial has roots outside the cyclotomic fields handled here."""

    def __init__(self, detail: str, edge_polynomial: str):
        super().__init__(f"{detail}: {edge_polynomial}")
        self.edge_polynomial = edge_polynomial


class InsufficientPrecision(SingularityError):
    """The known terms do not determine the answer; supply more terms."""

    exit_code = EXIT_PRECISION


class InvariantViolation(SingularityError):
    """An internal invariant failed; this is a bug or a precision bookkeeping error."""

    exit_code = EXIT_INTERNAL
