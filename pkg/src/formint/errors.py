"""Exception hierarchy shared by all formint modules."""

from __future__ import annotations


class FormIntError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(FormIntError):
    pass


class BothZero(FormIntError):
    pass


class ZeroInput(FormIntError):
    pass


class NotPolynomialInVar(FormIntError):
    pass


class NonInvertibleDenominator(FormIntError):
    pass


class NotCoprime(FormIntError):
    pass


class PreconditionViolated(FormIntError):
    pass


class IndexOutOfRange(FormIntError):
    pass


class NotClosed(FormIntError):
    """Raised when an operation requires a closed form.

    Carries a witness: one nonzero coefficient of the exterior derivative,
    as a pair (index_tuple, coefficient).
    """

    def __init__(self, witness):
        self.witness = witness
        idx, coeff = witness
        super().__init__(f"form is not closed: d(form) has coefficient {coeff} on {idx}")


class ResidualLogarithm(FormIntError):
    """Derivative expansion left an uncancelled logarithm."""


class RationalityAssertionFailed(FormIntError):
    """Internal consistency failure: a provably rational quantity was not."""


class NotSmooth(FormIntError):
    pass


class NotHomogeneous(FormIntError):
    pass


class DegreeMismatch(FormIntError):
    pass


class ParseError(FormIntError):
    def __init__(self, line: int, column: int, expected, found: str = ""):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        msg = f"parse error at {line}:{column}: expected {exp}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)
