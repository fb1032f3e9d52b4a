"""Exception hierarchy.

``ValidationError`` marks bad input data (CLI exit code 2); subclasses of
``NumericalError`` mark violated numerical preconditions (CLI exit code 3).
"""


class TtolabError(Exception):
    pass


class ValidationError(TtolabError):
    """Input data violates a structural invariant."""


class NumericalError(TtolabError):
    """A numerical precondition failed."""


class PoleProximityError(NumericalError):
    """Evaluation point too close to a pole of a Blaschke factor."""


class RootFindingError(NumericalError):
    """Root extraction produced roots outside the expected region."""


class PositivityError(NumericalError):
    """Modulus data not strictly positive."""


class DegenerateInputError(NumericalError):
    """Identically-zero or otherwise degenerate symbol."""


class DegenerateParameterError(NumericalError):
    """Shift-parameter denominator vanishes."""


class SingularDenominatorError(NumericalError):
    """Denominator operator numerically singular (coprimality violated)."""


class ExceptionalParameterError(NumericalError):
    """Clark parameter with a multiple boundary root."""
