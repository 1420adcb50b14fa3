"""Exception hierarchy shared by all lvk modules."""


class LvkError(Exception):
    """Base class for all lvk errors."""


class ParseError(LvkError):
    """Input text does not conform to the grammar."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ArityMismatch(LvkError):
    """Operands disagree on the number of variables."""


class ZeroDivisionInField(LvkError):
    """Division by the zero polynomial or rational function."""


class NotDivisibleError(LvkError):
    """exact_div was asked to prove a divisibility that does not hold.

    Callers that treat NotDivisible as a normal outcome should use the
    ``try_exact_div`` variant instead of catching this.
    """


class DegreeCapExceeded(LvkError):
    """An intermediate polynomial exceeded the LVK_MAX_DEGREE safety rail."""


class NonConstantResidue(LvkError):
    """Residues of the logarithmic part are not constants.

    Reaching this indicates the 1-form being integrated was not closed or a
    caller violated a precondition; it is never a silent fallback.
    """


class NotClosed(LvkError):
    """A 1-form handed to the integrator failed the exactness check."""

    def __init__(self, message, pair=None, residual=None):
        self.pair = pair
        self.residual = residual
        super().__init__(message)


class VerificationError(LvkError):
    """An input object failed the verification its caller requires."""
