from __future__ import annotations


class AbsurdError(Exception):
    """Base class for every error raised by this package.

    ``position`` and ``text`` locate the offending subexpression when the
    error came from parsing or simplifying a textual expression.
    """

    position: int | None = None
    text: str | None = None

    def caret(self) -> str:
        if self.text is None or self.position is None:
            return ""
        return f"{self.text}\n{' ' * self.position}^"


class NonPositiveBase(AbsurdError, ValueError):
    pass


class NegativeBaseFractionalPower(AbsurdError, ValueError):
    pass


class DivisionByZero(AbsurdError, ZeroDivisionError):
    pass


class ZeroToNegativePower(DivisionByZero):
    pass


class Indeterminate(AbsurdError, ArithmeticError):
    """0/0 after simplification of both numerator and denominator."""


class UnsupportedDenominator(AbsurdError, ArithmeticError):
    """Division by a sum of two or more incommensurate absurd numbers."""


class NestedRadical(AbsurdError, ArithmeticError):
    """A fractional power of an irreducible sum."""


class MultiTermResult(AbsurdError, ValueError):
    pass


class FactoringBudgetExhausted(AbsurdError):
    """Complete factorization did not finish within the configured budget.

    ``partial`` holds whatever was computed with the stubborn radicands left
    unfactored, when the caller was able to build one.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(AbsurdError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class NonRationalExponent(ParseError):
    pass
