"""Exception hierarchy shared by every module of the package."""


class NLeibnizError(Exception):
    """Base class for all errors raised by nleibniz."""


class ParseError(NLeibnizError, ValueError):
    """Malformed JSON or a schema violation in an input file."""


class BasisIndexError(ParseError, IndexError):
    """A basis index in a file is outside ``[0, dimension)``."""


class DuplicateEntry(ParseError):
    """The same bracket, form or output entry is listed twice."""


class TripleInvariantError(ParseError):
    """A Lie triple data fails one of its defining invariants."""


class DegenerateFormError(TripleInvariantError):
    pass


class HomomorphismError(TripleInvariantError):
    pass


class FaithfulnessError(TripleInvariantError):
    pass


class OrthogonalityError(TripleInvariantError):
    pass


class Inconsistent(NLeibnizError, ArithmeticError):
    """A linear system has no solution."""


class NotSymmetric(NLeibnizError, ValueError):
    pass


class GuardrailExceeded(NLeibnizError):
    """A basis-tuple enumeration would exceed the configured cap."""


class AxiomViolation(NLeibnizError):
    """An input fails the axioms an operation requires.

    The failing :class:`~nleibniz.axioms.Report` is kept on ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InternalInvariantViolation(NLeibnizError):
    """A result that is provably impossible once the preconditions passed."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ClosureError(InternalInvariantViolation):
    """A commutator of two elements of Im D escaped their span."""


class WellDefinednessError(InternalInvariantViolation):
    """Two tuple expressions of the same element of Im D disagree under the form."""


class ConsistencyError(InternalInvariantViolation):
    """A transferred operator could not be expressed in the Lie algebra basis."""
