"""Parsing and bottom-up simplification of arithmetic over absurd numbers.

Grammar, loosest to tightest: ``+ -``, ``* /``, unary ``-``, ``^`` (right
associative; ``**`` is accepted too).  Literals are integers or decimals;
``sqrt(x)`` means ``x^(1/2)``.  Every exponent must reduce to a rational
number when the expression is parsed.

A simplified expression is a :class:`SumOfAbsurds`: pairwise
incommensurate terms held over one shared coprime basis, so two equal
expressions always yield equal sums and a zero value always yields the
empty sum.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from . import core
from .core import AbsurdNumber, add, from_rational, is_zero, mul, negate, refine_jointly
from .errors import (
    AbsurdError,
    DivisionByZero,
    Indeterminate,
    MultiTermResult,
    NestedRadical,
    NonRationalExponent,
    ParseError,
    UnsupportedDenominator,
)
from .forms import RECOMMENDED, DisplayForm, FormKind, canonical_form, convert, most_concise, render_latex, render_text
from .numkernel import str_to_int

__all__ = [
    "Literal",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Expr",
    "SumOfAbsurds",
    "parse",
    "simplify",
    "evaluate",
]


# -- syntax tree ------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    value: Fraction
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    operand: Expr
    pos: int = 0


@dataclass(frozen=True)
class Add:
    left: Expr
    right: Expr
    pos: int = 0


@dataclass(frozen=True)
class Sub:
    left: Expr
    right: Expr
    pos: int = 0


@dataclass(frozen=True)
class Mul:
    left: Expr
    right: Expr
    pos: int = 0


@dataclass(frozen=True)
class Div:
    left: Expr
    right: Expr
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: Fraction
    pos: int = 0


Expr = Union[Literal, Neg, Add, Sub, Mul, Div, Pow]


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^(),]))")
_BINARY = {"+": (10, Add), "-": (10, Sub), "*": (20, Mul), "/": (20, Div)}
_UNARY_BP = 30
_POWER_BP = 40
_FUNCTIONS = {"sqrt": Fraction(1, 2)}


def _number(text: str) -> Fraction:
    whole, _, frac = text.partition(".")
    return Fraction(str_to_int((whole or "0") + frac), 10 ** len(frac))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                rest = len(text) - len(text[pos:].lstrip())
                if rest >= len(text):
                    break
                raise ParseError(f"unexpected character {text[rest]!r}", rest, text)
            kind = "num" if m.group(1) else "name" if m.group(2) else "op"
            start = m.start(m.lastindex)
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0
        self.exponent_depth = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> int:
        kind, v, pos = self.advance()
        if v != value or kind != "op":
            found = "end of input" if kind == "end" else repr(v)
            raise ParseError(f"expected {value!r}, found {found}", pos, self.text)
        return pos

    def parse(self) -> Expr:
        node = self.expression(0)
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos, self.text)
        return node

    def expression(self, rbp: int) -> Expr:
        left = self.prefix()
        while True:
            kind, v, pos = self.peek()
            if kind != "op":
                return left
            if v in ("^", "**"):
                if _POWER_BP <= rbp:
                    return left
                self.advance()
                left = Pow(left, self.exponent(), pos)
            elif v in _BINARY and _BINARY[v][0] > rbp:
                self.advance()
                bp, node = _BINARY[v]
                left = node(left, self.expression(bp), pos)
            else:
                return left

    def exponent(self) -> Fraction:
        _, _, start = self.peek()
        self.exponent_depth += 1
        try:
            # right associative, and a unary minus may open the exponent
            node = self.expression(_POWER_BP - 1)
        finally:
            self.exponent_depth -= 1
        try:
            value = simplify(node)
        except AbsurdError as exc:
            exc.text = self.text
            raise
        if len(value.terms) > 1 or (value.terms and not value.terms[0].is_rational):
            raise NonRationalExponent("exponent must be a rational number", start, self.text)
        return value.terms[0].coefficient if value.terms else Fraction(0)

    def prefix(self) -> Expr:
        kind, v, pos = self.advance()
        if kind == "num":
            return Literal(_number(v), pos)
        if kind == "name":
            if v in _FUNCTIONS:
                self.expect("(")
                arg = self.expression(0)
                self.expect(")")
                return Pow(arg, _FUNCTIONS[v], pos)
            if self.exponent_depth:
                raise NonRationalExponent(f"symbolic exponent {v!r} is not supported", pos, self.text)
            raise ParseError(f"unknown name {v!r}", pos, self.text)
        if v == "(":
            node = self.expression(0)
            self.expect(")")
            return node
        if v == "-":
            return Neg(self.expression(_UNARY_BP), pos)
        if v == "+":
            return self.expression(_UNARY_BP)
        found = "end of input" if kind == "end" else repr(v)
        raise ParseError(f"unexpected {found}", pos, self.text)


def parse(text: str) -> Expr:
    """Parse ``text`` into a syntax tree; exponents are folded to rationals."""
    return _Parser(text).parse()


# -- sums of absurd numbers ---------------------------------------------------


def _key(a: AbsurdNumber):
    return a.radicals()


@dataclass(frozen=True)
class SumOfAbsurds:
    terms: tuple[AbsurdNumber, ...] = ()

    @classmethod
    def of(cls, terms: Iterable[AbsurdNumber]) -> SumOfAbsurds:
        """Collect terms over a shared basis and merge commensurate ones."""
        terms = [t for t in terms if not is_zero(t)]
        while terms:
            terms = refine_jointly(terms)
            merged: dict = {}
            for t in terms:
                k = t.factors
                merged[k] = merged.get(k, 0) + t.coefficient
            if len(merged) == len(terms):
                break
            terms = [AbsurdNumber(c, k) for k, c in merged.items() if c != 0]
        result = cls(tuple(sorted(terms, key=_key)))
        if core.CHECK_INVARIANTS:
            result.check_invariants()
        return result

    @classmethod
    def single(cls, a: AbsurdNumber) -> SumOfAbsurds:
        return cls(()) if is_zero(a) else cls((a,))

    def check_invariants(self) -> None:
        keys = [_key(t) for t in self.terms]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise AssertionError("terms unsorted or duplicated")
        for i, t in enumerate(self.terms):
            if is_zero(t):
                raise AssertionError("zero term in sum")
            core.check_invariants(t)
            for u in self.terms[i + 1 :]:
                if add(t, u) is not None:
                    raise AssertionError(f"commensurate terms {t} and {u} left unmerged")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_absurd(self) -> AbsurdNumber:
        """The value as one absurd number; MultiTermResult for a genuine sum."""
        if len(self.terms) > 1:
            raise MultiTermResult(f"{self} is a sum of {len(self.terms)} incommensurate terms")
        return self.terms[0] if self.terms else core.ZERO

    def __add__(self, other: SumOfAbsurds) -> SumOfAbsurds:
        return SumOfAbsurds.of(self.terms + other.terms)

    def __neg__(self) -> SumOfAbsurds:
        return SumOfAbsurds(tuple(negate(t) for t in self.terms))

    def __sub__(self, other: SumOfAbsurds) -> SumOfAbsurds:
        return self + (-other)

    def __mul__(self, other: SumOfAbsurds) -> SumOfAbsurds:
        return SumOfAbsurds.of(mul(a, b) for a in self.terms for b in other.terms)

    def power(self, alpha: Fraction) -> SumOfAbsurds:
        alpha = Fraction(alpha)
        if len(self.terms) <= 1:
            return SumOfAbsurds.single(core.pow(self.as_absurd(), alpha))
        if alpha.denominator != 1:
            raise NestedRadical(f"fractional power {alpha} of an irreducible sum")
        if alpha < 0:
            raise UnsupportedDenominator("negative power of an irreducible sum")
        result, base, k = SumOfAbsurds.single(core.ONE), self, int(alpha)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def render(self, form: FormKind | str | None = None, layout: str = "product", latex: bool = False,
               budget: int | None = None) -> str:
        """Text (or LaTeX) with each term in ``form``; by default each term
        takes its most concise recommended form."""
        if not self.terms:
            return "0"
        draw = render_latex if latex else render_text
        pieces = []
        for i, t in enumerate(self.terms):
            text = draw(display_form(abs_term(t), form, layout, budget))
            if t.coefficient < 0:
                pieces.append(("-" if i == 0 else " - ") + text)
            else:
                pieces.append(("" if i == 0 else " + ") + text)
        return "".join(pieces)

    def __str__(self):
        return self.render()


def abs_term(a: AbsurdNumber) -> AbsurdNumber:
    return negate(a) if a.coefficient < 0 else a


def display_form(a: AbsurdNumber, form: FormKind | str | None = None, layout: str = "product",
                 budget: int | None = None) -> DisplayForm:
    """``a`` in the requested kind, its internal factors for "canonical", or
    the most concise recommended kind."""
    if form == "canonical":
        return canonical_form(a).with_layout(layout)
    if form is None or form == "auto":
        return most_concise(a, RECOMMENDED, budget, layout)[0]
    return convert(a, form, budget, layout)


# -- simplification ---------------------------------------------------------


def simplify(e: Expr) -> SumOfAbsurds:
    """Evaluate a syntax tree bottom-up to its canonical sum."""
    try:
        return _simplify(e)
    except AbsurdError as exc:
        if exc.position is None:
            exc.position = e.pos
        raise


def _simplify(e: Expr) -> SumOfAbsurds:
    match e:
        case Literal(value=v):
            return SumOfAbsurds.single(from_rational(v))
        case Neg(operand=x):
            return -simplify(x)
        case Add(left=x, right=y):
            return simplify(x) + simplify(y)
        case Sub(left=x, right=y):
            return simplify(x) - simplify(y)
        case Mul(left=x, right=y):
            return simplify(x) * simplify(y)
        case Div(left=x, right=y):
            top, bottom = simplify(x), simplify(y)
            if bottom.is_zero:
                if top.is_zero:
                    raise Indeterminate("indeterminate (0/0)")
                raise DivisionByZero("division by zero")
            if len(bottom.terms) > 1:
                raise UnsupportedDenominator("division by an irreducible sum is not supported")
            return top * SumOfAbsurds.single(core.pow(bottom.terms[0], -1))
        case Pow(base=x, exponent=alpha):
            return simplify(x).power(alpha)
    raise TypeError(f"not an expression node: {e!r}")


def evaluate(text: str) -> SumOfAbsurds:
    """Parse and simplify; errors carry the source text and a position."""
    try:
        return simplify(parse(text))
    except AbsurdError as exc:
        exc.text = text
        raise
