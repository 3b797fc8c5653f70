"""Display forms: sixteen ways to write the same absurd number.

Forms built on prime bases (and the coprime square-free forms derived
from them) need every quasi-prime radicand fully factored; when the
factoring budget runs out the converter raises
:class:`~absurd.errors.FactoringBudgetExhausted` with a partially
converted form attached.  The imperfect-power, reciprocal and
single-integer-base-from-ratio forms use perfect-power tests only.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .core import AbsurdNumber, from_rational, mul, normalize_power
from .errors import FactoringBudgetExhausted
from .numkernel import (
    factor_full,
    max_perfect_power,
    max_perfect_power_rational,
    max_reciprocal_root,
    rational_to_str,
)

__all__ = [
    "FormKind",
    "DisplayForm",
    "SizeReport",
    "convert",
    "to_pure_primal",
    "to_proper_primal",
    "to_tight_balanced_primal",
    "to_loose_balanced_primal",
    "to_coprime_sqfree",
    "to_imperfect_single",
    "to_imperfect_ratio",
    "to_max_reciprocal_single",
    "to_max_reciprocal_ratio",
    "to_single_min_int_base",
    "to_single_int_imperfect_base",
    "extract_whole_powers",
    "size_of",
    "most_concise",
    "RECOMMENDED",
    "PRIORITY",
    "render_text",
    "canonical_form",
    "render_latex",
]


class FormKind(Enum):
    pure_primal = 1
    proper_primal = 2
    tight_balanced_primal = 3
    loose_balanced_primal = 4
    coprime_sqfree_int_distinct = 5
    coprime_sqfree_int_proper = 6
    coprime_sqfree_int_tight = 7
    coprime_sqfree_int_loose = 8
    coprime_sqfree_rat_proper = 9
    coprime_sqfree_rat_tight = 10
    imperfect_single = 11
    imperfect_ratio = 12
    max_reciprocal_single = 13
    max_reciprocal_ratio = 14
    single_min_int_base_proper = 15
    single_int_imperfect_base = 16

    @classmethod
    def lookup(cls, name: str) -> FormKind:
        """Resolve a kind by exact name, table number or unique prefix."""
        key = name.strip().lower().replace("-", "_")
        if key.isdigit():
            return cls(int(key))
        if key in cls.__members__:
            return cls[key]
        hits = [k for k in cls if k.name.startswith(key)]
        if len(hits) == 1:
            return hits[0]
        choices = ", ".join(k.name for k in hits) if hits else "none"
        raise ValueError(f"unknown or ambiguous form {name!r} (matches: {choices})")


def _height(base: Fraction) -> tuple:
    return (max(base.numerator, base.denominator), base)


@dataclass(frozen=True)
class DisplayForm:
    kind: FormKind
    coefficient: Fraction
    terms: tuple[tuple[Fraction, Fraction], ...] = ()
    layout: str = "product"
    # False when a stubborn radicand was left unfactored
    complete: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        terms = tuple(sorted(((Fraction(b), Fraction(e)) for b, e in self.terms), key=lambda t: _height(t[0])))
        object.__setattr__(self, "terms", terms)
        if self.layout not in ("product", "ratio"):
            raise ValueError(f"layout must be 'product' or 'ratio', got {self.layout!r}")

    def value(self) -> AbsurdNumber:
        out = from_rational(self.coefficient)
        for b, e in self.terms:
            out = mul(out, normalize_power(b, e))
        return out

    def with_layout(self, layout: str) -> DisplayForm:
        return replace(self, layout=layout)

    def __str__(self):
        return render_text(self)


class SizeReport(NamedTuple):
    kind: FormKind
    size: int


def _sign(a: AbsurdNumber) -> int:
    return -1 if a.coefficient < 0 else 1


def _budget_error(form: DisplayForm) -> FactoringBudgetExhausted:
    return FactoringBudgetExhausted(
        f"factoring budget exhausted while building {form.kind.name}; partial form: {render_text(form)}",
        partial=form,
    )


def _finish(form: DisplayForm) -> DisplayForm:
    if not form.complete:
        raise _budget_error(form)
    return form


# -- prime exponent maps --------------------------------------------------


def _radical_primes(a: AbsurdNumber, budget: int | None) -> tuple[dict[int, Fraction], bool]:
    """Prime -> exponent for the irrational part; unfactorable bases kept whole."""
    exps: dict[int, Fraction] = defaultdict(Fraction)
    complete = True
    for f in a.factors:
        primes = factor_full(f.base, budget) if f.quasi else [(f.base, 1)]
        if primes is None:
            complete = False
            primes = [(f.base, 1)]
        for p, m in primes:
            exps[p] += m * f.exponent
    return exps, complete


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _fold_coefficient(c: Fraction, exps: dict) -> tuple[Fraction, dict]:
    """Move each radical prime's power out of c into the exponent map."""
    exps = dict(exps)
    for p in exps:
        v = _valuation(c.numerator, p) - _valuation(c.denominator, p)
        if v:
            exps[p] += v
            c /= Fraction(p) ** v
    return c, exps


def _pure_exponents(a: AbsurdNumber, budget) -> tuple[int, dict, bool]:
    exps, complete = _radical_primes(a, budget)
    c = abs(a.coefficient)
    for n, e in ((c.numerator, 1), (c.denominator, -1)):
        if n == 1:
            continue
        primes = factor_full(n, budget)
        if primes is None:
            complete = False
            primes = [(n, 1)]
        for p, m in primes:
            exps[p] = exps.get(p, Fraction(0)) + m * e
    return _sign(a), {p: e for p, e in exps.items() if e}, complete


_WINDOWS: dict[str, Callable[[Fraction], int]] = {
    "proper": math.floor,
    "tight": lambda e: math.ceil(e - Fraction(1, 2)),
    "loose": math.trunc,
}


def _windowed(a: AbsurdNumber, window: str, budget) -> tuple[Fraction, dict, bool]:
    exps, complete = _radical_primes(a, budget)
    c, exps = _fold_coefficient(a.coefficient, exps)
    shift = _WINDOWS[window]
    out = {}
    for p, e in exps.items():
        w = shift(e)
        c *= Fraction(p) ** w
        if e != w:
            out[p] = e - w
    return c, out, complete


# -- primal forms ---------------------------------------------------------


def to_pure_primal(a: AbsurdNumber, budget: int | None = None) -> DisplayForm:
    if a.coefficient == 0:
        return DisplayForm(FormKind.pure_primal, 0)
    sign, exps, complete = _pure_exponents(a, budget)
    return _finish(DisplayForm(FormKind.pure_primal, sign, tuple(exps.items()), complete=complete))


def _primal(kind: FormKind, window: str, a: AbsurdNumber, budget) -> DisplayForm:
    if a.coefficient == 0:
        return DisplayForm(kind, 0)
    c, exps, complete = _windowed(a, window, budget)
    return _finish(DisplayForm(kind, c, tuple(exps.items()), complete=complete))


def to_proper_primal(a: AbsurdNumber, budget: int | None = None) -> DisplayForm:
    return _primal(FormKind.proper_primal, "proper", a, budget)


def to_tight_balanced_primal(a: AbsurdNumber, budget: int | None = None) -> DisplayForm:
    return _primal(FormKind.tight_balanced_primal, "tight", a, budget)


def to_loose_balanced_primal(a: AbsurdNumber, budget: int | None = None) -> DisplayForm:
    # From the pure primal exponents, truncation leaves every coefficient
    # prime on the same side as its radical, so neither divisibility
    # condition can be violated.
    return _primal(FormKind.loose_balanced_primal, "loose", a, budget)


# -- coprime square-free forms --------------------------------------------

_COPRIME_KINDS = {
    ("int", "distinct"): FormKind.coprime_sqfree_int_distinct,
    ("int", "proper"): FormKind.coprime_sqfree_int_proper,
    ("int", "tight"): FormKind.coprime_sqfree_int_tight,
    ("int", "loose"): FormKind.coprime_sqfree_int_loose,
    ("rat", "proper"): FormKind.coprime_sqfree_rat_proper,
    ("rat", "tight"): FormKind.coprime_sqfree_rat_tight,
}


def _group_by_exponent(exps: dict) -> list[tuple[Fraction, Fraction]]:
    groups: dict[Fraction, int] = defaultdict(lambda: 1)
    for p, e in exps.items():
        groups[e] *= p
    return [(Fraction(b), e) for e, b in groups.items()]


def to_coprime_sqfree(a: AbsurdNumber, base: str = "int", window: str = "distinct", budget: int | None = None) -> DisplayForm:
    """Coprime square-free bases with pairwise distinct exponents.

    ``base`` is "int" or "rat"; ``window`` is "distinct" (no window, unit
    coefficient), "proper", "tight" or "loose".  Rational-base variants
    pair primes whose exponents differ only in sign into one rational base.
    """
    kind = _COPRIME_KINDS.get((base, window))
    if kind is None:
        raise ValueError(f"no coprime square-free variant with {base} bases and {window} exponents")
    if a.coefficient == 0:
        return DisplayForm(kind, 0)
    if base == "int":
        if window == "distinct":
            c, exps, complete = _pure_exponents(a, budget)
        else:
            c, exps, complete = _windowed(a, window, budget)
        return _finish(DisplayForm(kind, c, tuple(_group_by_exponent(exps)), complete=complete))

    exps, complete = _radical_primes(a, budget)
    c, exps = _fold_coefficient(a.coefficient, exps)
    # pair primes by |exponent|: numerator primes over denominator primes
    paired: dict[Fraction, Fraction] = defaultdict(lambda: Fraction(1))
    for p, e in exps.items():
        paired[abs(e)] *= Fraction(p) if e > 0 else Fraction(1, p)
    shift = _WINDOWS[window]
    merged: dict[Fraction, Fraction] = defaultdict(lambda: Fraction(1))
    for e, b in paired.items():
        w = shift(e)
        c *= b**w
        rest = e - w
        if rest < 0:
            b, rest = 1 / b, -rest
        if rest:
            merged[rest] *= b
    terms = tuple((b, e) for e, b in merged.items())
    return _finish(DisplayForm(kind, c, terms, complete=complete))


# -- perfect-power forms ----------------------------------------------------


class _Unified(NamedTuple):
    sign: int
    radicand: Fraction  # value == sign * radicand ** (1 / denominator)
    denominator: int


def _unify(a: AbsurdNumber) -> _Unified:
    """Collect |value| as one rational raised to 1/L, L the lcm of exponent denominators."""
    L = math.lcm(*(f.exponent.denominator for f in a.factors))
    r = abs(a.coefficient) ** L
    for f in a.factors:
        r *= Fraction(f.base) ** int(f.exponent * L)
    return _Unified(_sign(a), r, L)


def _rational_only(kind: FormKind, a: AbsurdNumber) -> DisplayForm | None:
    if a.is_rational:
        return DisplayForm(kind, a.coefficient)
    return None


def to_imperfect_single(a: AbsurdNumber) -> DisplayForm:
    """sign * r**e with r a rational imperfect power and e > 0."""
    kind = FormKind.imperfect_single
    plain = _rational_only(kind, a)
    if plain is not None:
        return plain
    u = _unify(a)
    root, k = max_perfect_power_rational(u.radicand)
    return DisplayForm(kind, u.sign, ((root, Fraction(k, u.denominator)),))


def _integer_power(n: int) -> tuple[int, int]:
    if n == 1:
        return 1, 0
    d = max_perfect_power(n)
    return d.root, d.exponent


def to_imperfect_ratio(a: AbsurdNumber) -> DisplayForm:
    """sign * n**e1 / d**e2 with n, d imperfect-power integers."""
    kind = FormKind.imperfect_ratio
    plain = _rational_only(kind, a)
    if plain is not None:
        return plain
    single = to_imperfect_single(a)
    (r, e), = single.terms
    terms = []
    for n, s in ((r.numerator, 1), (r.denominator, -1)):
        root, k = _integer_power(n)
        if k:
            terms.append((Fraction(root), s * k * e))
    return DisplayForm(kind, single.coefficient, tuple(terms))


def to_max_reciprocal_single(a: AbsurdNumber) -> DisplayForm:
    """sign * r**(1/q) with q as small as possible."""
    kind = FormKind.max_reciprocal_single
    plain = _rational_only(kind, a)
    if plain is not None:
        return plain
    u = _unify(a)
    base, q = max_reciprocal_root(u.radicand, Fraction(1, u.denominator))
    return DisplayForm(kind, u.sign, ((base, Fraction(1, q)),))


def to_max_reciprocal_ratio(a: AbsurdNumber) -> DisplayForm:
    """sign * n**(1/q1) / d**(1/q2), each a maximal reciprocal power."""
    kind = FormKind.max_reciprocal_ratio
    plain = _rational_only(kind, a)
    if plain is not None:
        return plain
    u = _unify(a)
    c = Fraction(u.sign)
    terms = []
    for n, s in ((u.radicand.numerator, 1), (u.radicand.denominator, -1)):
        if n == 1:
            continue
        base, q = max_reciprocal_root(Fraction(n), Fraction(1, u.denominator))
        if q == 1:
            c *= base**s
        else:
            terms.append((base, Fraction(s, q)))
    return DisplayForm(kind, c, tuple(terms))


def _single_power(kind: FormKind, c: Fraction, powers: Iterable[tuple[int, Fraction]], **extra) -> DisplayForm:
    """c * prod(b**e), 0 < e < 1, unified as one integer radicand.

    The radicand is prod(b**(e*L/g)) with exponent g/L, where g is the gcd
    of the integer exponents e*L; dividing out g keeps the base minimal.
    """
    powers = [(b, e) for b, e in powers if e]
    if not powers:
        return DisplayForm(kind, c, **extra)
    L = math.lcm(*(e.denominator for _, e in powers))
    nums = [int(e * L) for _, e in powers]
    g = math.gcd(*nums)
    radicand = 1
    for (b, _), n in zip(powers, nums):
        radicand *= b ** (n // g)
    return DisplayForm(kind, c, ((Fraction(radicand), Fraction(g, L)),), **extra)


def to_single_min_int_base(a: AbsurdNumber, budget: int | None = None) -> DisplayForm:
    """Rational times the smallest integer radicand with a proper exponent."""
    kind = FormKind.single_min_int_base_proper
    if a.coefficient == 0:
        return DisplayForm(kind, 0)
    c, exps, complete = _windowed(a, "proper", budget)
    return _finish(_single_power(kind, c, sorted(exps.items()), complete=complete))


def to_single_int_imperfect_base(a: AbsurdNumber) -> DisplayForm:
    """Rational times one integer radicand, built from the imperfect ratio
    by making exponents proper and rationalizing the denominator."""
    kind = FormKind.single_int_imperfect_base
    plain = _rational_only(kind, a)
    if plain is not None:
        return plain
    ratio = to_imperfect_ratio(a)
    c = ratio.coefficient
    powers = []
    for b, e in ratio.terms:
        n = int(b)
        if e > 0:
            whole = math.floor(e)
            c *= Fraction(n) ** whole
            powers.append((n, e - whole))
        else:
            whole = math.ceil(-e)
            c /= Fraction(n) ** whole
            powers.append((n, whole + e))
    return _single_power(kind, c, powers)


def extract_whole_powers(form: DisplayForm) -> DisplayForm:
    """Move integer parts of exponents into the coefficient, e.g.
    (24/5)**(4/3) -> 24/5 * (24/5)**(1/3).  For display only: the result is
    not a canonical representation."""
    c = form.coefficient
    terms = []
    for b, e in form.terms:
        whole = math.floor(e)
        c *= b**whole
        if e != whole:
            terms.append((b, e - whole))
    return replace(form, coefficient=c, terms=tuple(terms))


_CONVERTERS: dict[FormKind, Callable] = {
    FormKind.pure_primal: to_pure_primal,
    FormKind.proper_primal: to_proper_primal,
    FormKind.tight_balanced_primal: to_tight_balanced_primal,
    FormKind.loose_balanced_primal: to_loose_balanced_primal,
    FormKind.single_min_int_base_proper: to_single_min_int_base,
    **{k: (lambda a, budget=None, _v=v: to_coprime_sqfree(a, *_v, budget=budget)) for v, k in _COPRIME_KINDS.items()},
}
_FACTOR_FREE: dict[FormKind, Callable] = {
    FormKind.imperfect_single: to_imperfect_single,
    FormKind.imperfect_ratio: to_imperfect_ratio,
    FormKind.max_reciprocal_single: to_max_reciprocal_single,
    FormKind.max_reciprocal_ratio: to_max_reciprocal_ratio,
    FormKind.single_int_imperfect_base: to_single_int_imperfect_base,
}

NEEDS_FACTORING = frozenset(_CONVERTERS)


def convert(a: AbsurdNumber, kind: FormKind | str | int, budget: int | None = None, layout: str = "product") -> DisplayForm:
    if isinstance(kind, str):
        kind = FormKind.lookup(kind)
    elif not isinstance(kind, FormKind):
        kind = FormKind(kind)
    if kind in _FACTOR_FREE:
        form = _FACTOR_FREE[kind](a)
    else:
        form = _CONVERTERS[kind](a, budget=budget)
    return form.with_layout(layout) if layout != form.layout else form


# -- size and selection -----------------------------------------------------

# ties go to the earliest kind in this list
PRIORITY = (
    FormKind.single_min_int_base_proper,
    FormKind.coprime_sqfree_int_proper,
    FormKind.coprime_sqfree_rat_proper,
    FormKind.coprime_sqfree_int_tight,
    FormKind.coprime_sqfree_rat_tight,
    FormKind.coprime_sqfree_int_loose,
    FormKind.coprime_sqfree_int_distinct,
) + tuple(k for k in FormKind if k.name.startswith(("pure", "proper", "tight", "loose", "imperfect", "max", "single_int")))


# the default candidates when no form is requested
RECOMMENDED = (FormKind.single_min_int_base_proper,) + tuple(
    k for k in FormKind if k.name.startswith("coprime_sqfree")
)

def size_of(form: DisplayForm) -> SizeReport:
    return SizeReport(form.kind, len(render_text(form)))


def most_concise(
    a: AbsurdNumber,
    kinds: Iterable[FormKind] | None = None,
    budget: int | None = None,
    layout: str = "product",
) -> tuple[DisplayForm, list[SizeReport]]:
    """The smallest rendering among ``kinds`` (all kinds by default).

    Kinds whose factoring budget runs out are left out of the reports.  If
    every requested kind is out, the partially factored proper primal form
    is returned.
    """
    kinds = list(FormKind) if kinds is None else list(kinds)
    if not kinds:
        raise ValueError("most_concise needs at least one form kind")
    forms, fallback = [], None
    for kind in kinds:
        try:
            forms.append(convert(a, kind, budget, layout))
        except FactoringBudgetExhausted as exc:
            fallback = fallback or exc.partial
    if not forms:
        if fallback is None or fallback.kind != FormKind.proper_primal:
            try:
                fallback = to_proper_primal(a, budget)
            except FactoringBudgetExhausted as exc:
                fallback = exc.partial
        return fallback.with_layout(layout), []
    reports = [size_of(f) for f in forms]
    rank = {k: i for i, k in enumerate(PRIORITY)}
    best = min(zip(forms, reports), key=lambda fr: (fr[1].size, rank[fr[0].kind]))[0]
    return best, reports


# -- rendering --------------------------------------------------------------


def _text_exp(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator) if e > 0 else f"({e.numerator})"
    return f"({e.numerator}/{e.denominator})"


def _text_base(b: Fraction) -> str:
    return rational_to_str(b) if b.denominator == 1 else f"({rational_to_str(b)})"


def _text_power(b: Fraction, e: Fraction) -> str:
    return _text_base(b) if e == 1 else f"{_text_base(b)}^{_text_exp(e)}"


def canonical_form(a: AbsurdNumber) -> DisplayForm:
    """The internal factors as a display form, with no factoring.

    This is the proper primal form whenever every base is prime.  A
    quasi-prime base is shown whole, so parsing the rendering rebuilds
    exactly the same factors.
    """
    terms = [(Fraction(f.base), f.exponent) for f in a.factors]
    return DisplayForm(FormKind.proper_primal, a.coefficient, terms, complete=not any(f.quasi for f in a.factors))

def render_text(form: DisplayForm) -> str:
    """Plain-text rendering that the expression parser reads back."""
    c = form.coefficient
    if c == 0:
        return "0"
    if not form.terms:
        return rational_to_str(c)
    if form.layout == "product":
        body = "*".join(_text_power(b, e) for b, e in form.terms)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return f"{rational_to_str(c)}*{body}"
    top = [_text_power(b, e) for b, e in form.terms if e > 0]
    bottom = [_text_power(b, -e) for b, e in form.terms if e < 0]
    num, den = abs(c.numerator), c.denominator
    if num != 1 or not top:
        top.insert(0, rational_to_str(Fraction(num)))
    if den != 1:
        bottom.insert(0, rational_to_str(Fraction(den)))
    text = "*".join(top)
    if bottom:
        below = "*".join(bottom)
        text += "/" + (f"({below})" if len(bottom) > 1 else below)
    return "-" + text if c < 0 else text


def _latex_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return rational_to_str(q)
    sign = "-" if q < 0 else ""
    num, den = rational_to_str(Fraction(abs(q.numerator))), rational_to_str(Fraction(q.denominator))
    return f"{sign}\\frac{{{num}}}{{{den}}}"


def _latex_power(b: Fraction, e: Fraction) -> str:
    if b.denominator == 1:
        if e == Fraction(1, 2):
            return f"\\sqrt{{{rational_to_str(b)}}}"
        base = rational_to_str(b)
    else:
        base = f"\\left({_latex_rational(b)}\\right)"
    if e == 1:
        return base
    exp = str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
    return f"{base}^{{{exp}}}"


def _latex_product(lead: str, powers: list[str]) -> str:
    if not lead:
        return "\\,".join(powers)
    if not powers:
        return lead
    return lead + "\\cdot " + "\\,".join(powers)


def render_latex(form: DisplayForm) -> str:
    c = form.coefficient
    if c == 0:
        return "0"
    if not form.terms:
        return _latex_rational(c)
    sign = "-" if c < 0 else ""
    if form.layout == "product":
        mag = abs(c)
        lead = "" if mag == 1 else _latex_rational(mag)
        joiner = "\\," if mag.denominator != 1 else None
        powers = [_latex_power(b, e) for b, e in form.terms]
        if joiner and lead:
            return sign + lead + joiner + "\\,".join(powers)
        return sign + _latex_product(lead, powers)
    top = [_latex_power(b, e) for b, e in form.terms if e > 0]
    bottom = [_latex_power(b, -e) for b, e in form.terms if e < 0]
    num, den = abs(c.numerator), c.denominator
    upper = _latex_product("" if num == 1 else rational_to_str(Fraction(num)), top) or "1"
    lower = _latex_product("" if den == 1 else rational_to_str(Fraction(den)), bottom)
    if not lower:
        return sign + upper
    return f"{sign}\\dfrac{{{upper}}}{{{lower}}}"
