"""Canonical internal form for absurd numbers.

A value is a rational coefficient times a product of factors ``base**e``
with ``0 < e < 1``.  Bases up to the trial-division bound ``phat`` are
primes; larger bases are either primes below ``phat**2`` or *quasi-primes*:
integers with no prime factor up to ``phat`` that are not perfect powers.
Quasi-primes are never factored.  Instead every operation rebuilds a coprime
basis from the large radicands and the large parts of the coefficient by
repeated gcd splitting, so shared factors between radicands always surface.

Two values built independently may hold different quasi-prime bases for the
same number (``q**(1/2)`` versus ``a * b**(1/2)`` when ``q = a*a*b``).
:func:`refine_jointly` puts any collection of values over one common basis,
after which commensurability and equality are decided syntactically.
"""
from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, NamedTuple

import mpmath

from .config import get_config
from .errors import NegativeBaseFractionalPower, NonPositiveBase, ZeroToNegativePower
from .numkernel import factor_bounded, int_to_str, max_perfect_power, rational_to_str, str_to_int, str_to_rational

__all__ = [
    "Factor",
    "AbsurdNumber",
    "Approx",
    "ZERO",
    "ONE",
    "from_rational",
    "normalize_power",
    "mul",
    "pow",
    "add",
    "negate",
    "coprime_refine",
    "refine_jointly",
    "coprime_basis",
    "is_zero",
    "equals",
    "eval_approx",
    "check_invariants",
    "serialize",
    "deserialize",
]

# Set ABSURD_CHECK=1 to verify every invariant after each operation.
CHECK_INVARIANTS = os.environ.get("ABSURD_CHECK", "") not in ("", "0")


@dataclass(frozen=True, order=True)
class Factor:
    base: int
    exponent: Fraction
    quasi: bool = False

    def __str__(self):
        return f"{int_to_str(self.base)}^{self.exponent.numerator}/{self.exponent.denominator}"


@dataclass(frozen=True)
class AbsurdNumber:
    coefficient: Fraction
    factors: tuple[Factor, ...] = ()

    @property
    def is_rational(self) -> bool:
        return not self.factors

    @property
    def sign(self) -> int:
        return (self.coefficient > 0) - (self.coefficient < 0)

    def radicals(self) -> tuple[tuple[int, Fraction], ...]:
        """The irrational part as (base, exponent) pairs; the commensurability key."""
        return tuple((f.base, f.exponent) for f in self.factors)

    def __neg__(self):
        return negate(self)

    def __mul__(self, other):
        if not isinstance(other, AbsurdNumber):
            other = from_rational(other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, AbsurdNumber):
            other = from_rational(other)
        return mul(self, pow(other, -1))

    def __pow__(self, alpha):
        return pow(self, alpha)

    def __str__(self):
        return serialize(self)


ZERO = AbsurdNumber(Fraction(0))
ONE = AbsurdNumber(Fraction(1))


def from_rational(r) -> AbsurdNumber:
    return AbsurdNumber(Fraction(r))


def negate(a: AbsurdNumber) -> AbsurdNumber:
    return AbsurdNumber(-a.coefficient, a.factors)


def is_zero(a: AbsurdNumber) -> bool:
    return a.coefficient == 0


# -- coprime bases ---------------------------------------------------------


def coprime_basis(values: Iterable[int]) -> list[int]:
    """Pairwise coprime integers > 1 whose products generate every input.

    Each gcd split replaces x, y by g, x/g, y/g, so the product of pending
    and accepted items strictly shrinks and the loop terminates.
    """
    basis: list[int] = []
    work = [v for v in values if v > 1]
    while work:
        x = work.pop()
        for i, y in enumerate(basis):
            g = gcd(x, y)
            if g > 1:
                del basis[i]
                work.extend(v for v in (g, y // g, x // g) if v > 1)
                break
        else:
            basis.append(x)
    return basis


def _reduced_basis(pool: Iterable[int]) -> list[int]:
    roots = {max_perfect_power(b).root for b in coprime_basis(pool)}
    return sorted(roots)


def _express(n: int, roots: list[int]) -> list[tuple[int, int]]:
    out = []
    for r in roots:
        if n % r:
            continue
        k = 0
        while n % r == 0:
            n //= r
            k += 1
        out.append((r, k))
        if n == 1:
            break
    if n != 1:
        raise AssertionError(f"basis does not cover radicand; leftover {n}")
    return out


def _large_part(n: int, phat: int) -> int:
    return factor_bounded(n, phat).cofactor if n > 1 else 1


def _coefficient_pool(c: Fraction, phat: int) -> list[int]:
    out = []
    for n in (abs(c.numerator), c.denominator):
        part = _large_part(n, phat)
        if part > 1:
            out.append(part)
    return out


class _Split(NamedTuple):
    coefficient: Fraction
    small: dict
    large: list


def _split(coefficient, powers) -> _Split:
    """Trial-divide every radicand; small primes get exact exponents."""
    phat = get_config().phat
    small: dict[int, Fraction] = defaultdict(Fraction)
    large: list[tuple[int, Fraction]] = []
    for base, e in powers:
        if e == 0 or base == 1:
            continue
        if base < 1:
            raise NonPositiveBase(f"radicand must be positive, got {base}")
        fb = factor_bounded(base, phat)
        for p, m in fb.small_factors:
            small[p] += m * e
        if fb.cofactor > 1:
            large.append((fb.cofactor, Fraction(e)))
    return _Split(Fraction(coefficient), small, large)


def _pool(split: _Split) -> list[int]:
    phat = get_config().phat
    return [n for n, _ in split.large] + _coefficient_pool(split.coefficient, phat)


def _finish(split: _Split, basis: list[int]) -> AbsurdNumber:
    phat = get_config().phat
    coef = split.coefficient
    if coef == 0:
        return ZERO
    exps: dict[int, Fraction] = defaultdict(Fraction, split.small)
    for n, e in split.large:
        for root, k in _express(n, basis):
            exps[root] += k * e
    factors = []
    for base in sorted(exps):
        e = exps[base]
        whole = floor(e)
        if whole:
            coef *= Fraction(base) ** whole
        frac = e - whole
        if frac:
            factors.append(Factor(base, frac, base > phat * phat))
    result = AbsurdNumber(coef, tuple(factors))
    if CHECK_INVARIANTS:
        check_invariants(result)
    return result


def _assemble(coefficient, powers) -> AbsurdNumber:
    split = _split(coefficient, powers)
    if split.coefficient == 0:
        return ZERO
    return _finish(split, _reduced_basis(_pool(split)))


def _powers_of(a: AbsurdNumber, scale=1):
    return [(f.base, f.exponent * scale) for f in a.factors]


# -- public operations -----------------------------------------------------


def normalize_power(r, alpha) -> AbsurdNumber:
    """Canonical form of r**alpha for a positive rational r."""
    r, alpha = Fraction(r), Fraction(alpha)
    if r <= 0:
        raise NonPositiveBase(f"base of a fractional power must be positive, got {r}")
    return _assemble(1, [(r.numerator, alpha), (r.denominator, -alpha)])


def coprime_refine(a: AbsurdNumber) -> AbsurdNumber:
    """Rebuild ``a`` so its large radicands are coprime to each other and to
    the large parts of its coefficient."""
    return _assemble(a.coefficient, _powers_of(a))


def refine_jointly(numbers: Iterable[AbsurdNumber]) -> list[AbsurdNumber]:
    """Rewrite all ``numbers`` over one shared coprime basis."""
    splits = [_split(a.coefficient, _powers_of(a)) for a in numbers]
    pool = [n for s in splits for n in _pool(s)]
    basis = _reduced_basis(pool)
    return [_finish(s, basis) for s in splits]


def mul(a: AbsurdNumber, b: AbsurdNumber) -> AbsurdNumber:
    if is_zero(a) or is_zero(b):
        return ZERO
    return _assemble(a.coefficient * b.coefficient, _powers_of(a) + _powers_of(b))


def pow(a: AbsurdNumber, alpha) -> AbsurdNumber:
    alpha = Fraction(alpha)
    if is_zero(a):
        if alpha > 0:
            return ZERO
        if alpha == 0:
            return ONE
        raise ZeroToNegativePower("0 raised to a negative power")
    if alpha.denominator == 1:
        return _assemble(a.coefficient ** int(alpha), _powers_of(a, alpha))
    c = a.coefficient
    if c < 0:
        raise NegativeBaseFractionalPower(f"fractional power {alpha} of a negative number")
    return _assemble(1, [(c.numerator, alpha), (c.denominator, -alpha)] + _powers_of(a, alpha))


def add(a: AbsurdNumber, b: AbsurdNumber) -> AbsurdNumber | None:
    """Exact sum as a single absurd number, or None when a and b are
    incommensurate (their ratio is irrational)."""
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    ra, rb = refine_jointly([a, b])
    if ra.factors != rb.factors:
        return None
    return _assemble(ra.coefficient + rb.coefficient, _powers_of(ra))


def equals(a: AbsurdNumber, b: AbsurdNumber) -> bool:
    if a == b:
        return True
    if a.sign != b.sign or a.is_rational != b.is_rational:
        return False
    ra, rb = refine_jointly([a, b])
    return ra == rb


# -- numeric evaluation ----------------------------------------------------


class Approx(NamedTuple):
    value: mpmath.mpf
    error: mpmath.mpf

    def close_to(self, other: Approx) -> bool:
        return abs(self.value - other.value) <= self.error + other.error


def eval_approx(a: AbsurdNumber, precision_bits: int = 53) -> Approx:
    """Floating-point value at ``precision_bits`` with a 2-ulp error bound."""
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    if is_zero(a):
        return Approx(mpmath.mpf(0), mpmath.mpf(0))
    with mpmath.workprec(precision_bits + 32):
        v = mpmath.mpf(a.coefficient.numerator) / a.coefficient.denominator
        for f in a.factors:
            v *= mpmath.power(f.base, mpmath.mpf(f.exponent.numerator) / f.exponent.denominator)
    with mpmath.workprec(precision_bits):
        v = +v
        err = abs(v) * mpmath.ldexp(1, 2 - precision_bits)
    return Approx(v, err)


# -- validation and serialization ------------------------------------------


def check_invariants(a: AbsurdNumber) -> None:
    """Raise AssertionError unless ``a`` satisfies every canonical-form rule."""
    phat = get_config().phat
    c = a.coefficient
    if not isinstance(c, Fraction):
        raise AssertionError("coefficient must be a Fraction")
    if c == 0 and a.factors:
        raise AssertionError("zero coefficient with factors")
    bases = [f.base for f in a.factors]
    if bases != sorted(set(bases)):
        raise AssertionError(f"bases not strictly increasing: {bases}")
    for f in a.factors:
        if not 0 < f.exponent < 1:
            raise AssertionError(f"exponent {f.exponent} outside (0, 1)")
        if f.base < 2:
            raise AssertionError(f"base {f.base} < 2")
        fb = factor_bounded(f.base, phat)
        if f.base <= phat:
            if fb.small_factors != ((f.base, 1),):
                raise AssertionError(f"small base {f.base} is not prime")
        elif fb.cofactor != f.base:
            raise AssertionError(f"large base {f.base} has a factor <= {phat}")
        if f.quasi != (f.base > phat * phat):
            raise AssertionError(f"wrong quasi-prime tag on {f.base}")
        if max_perfect_power(f.base).exponent != 1:
            raise AssertionError(f"base {f.base} is a perfect power")
    for i, f in enumerate(a.factors):
        for g in a.factors[i + 1 :]:
            if gcd(f.base, g.base) != 1:
                raise AssertionError(f"bases {f.base} and {g.base} share a factor")
    for part in _coefficient_pool(c, phat) if c else ():
        for f in a.factors:
            if f.base > phat and gcd(f.base, part) not in (1, f.base):
                raise AssertionError(f"base {f.base} partially shares a factor with coefficient")


def serialize(a: AbsurdNumber) -> str:
    """Stable text form, e.g. ``2/15*2^1/3*3^1/3*5^1/3*7^2/3``."""
    if not a.factors:
        return rational_to_str(a.coefficient)
    return "*".join([rational_to_str(a.coefficient)] + [str(f) for f in a.factors])


def deserialize(text: str) -> AbsurdNumber:
    """Inverse of :func:`serialize`; rejects strings that are not canonical."""
    head, *rest = text.strip().split("*")
    try:
        coef = str_to_rational(head)
        powers = []
        for item in rest:
            base, exp = item.split("^")
            powers.append((str_to_int(base), str_to_rational(exp)))
    except ValueError as exc:
        raise ValueError(f"malformed canonical string {text!r}") from exc
    value = _assemble(coef, powers)
    if value.radicals() != tuple(powers) or value.coefficient != coef:
        raise ValueError(f"{text!r} is not in canonical form (canonical: {serialize(value)})")
    return value
