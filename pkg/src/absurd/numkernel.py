"""Integer and rational primitives.

Exact k-th roots by integer Newton iteration, maximal perfect-power
decomposition of integers and rationals, trial division up to a bound and a
budgeted Pollard-Brent factorizer used only for display forms.
"""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from decimal import Decimal
from functools import lru_cache
from math import gcd, isqrt, lcm

from .config import get_config

__all__ = [
    "PerfectPowerDecomposition",
    "BoundedFactorization",
    "gcd_rational",
    "floor_root",
    "integer_nth_root",
    "is_probable_prime",
    "max_perfect_power",
    "max_perfect_power_rational",
    "exact_rational_root",
    "max_reciprocal_root",
    "factor_bounded",
    "factor_full",
    "factor_full_calls",
    "primes_up_to",
    "clear_caches",
    "int_to_str",
    "str_to_int",
    "rational_to_str",
    "str_to_rational",
]


@lru_cache(maxsize=16)
def _sieve(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_up_to(limit: int) -> tuple[int, ...]:
    """All primes p <= limit, ascending."""
    return _sieve(limit)


# Radicands can outgrow the interpreter's int<->str digit cap; decimal
# conversions are exact and uncapped.
_STR_BITS = 14000
_STR_DIGITS = 4000


def int_to_str(n: int) -> str:
    return str(n) if n.bit_length() < _STR_BITS else str(Decimal(n))


def str_to_int(text: str) -> int:
    digits = text[1:] if text[:1] in "+-" else text
    if not digits.isdigit() or not digits.isascii():
        raise ValueError(f"invalid integer literal {text!r}")
    return int(text) if len(digits) <= _STR_DIGITS else int(Decimal(text))


def rational_to_str(q: Fraction) -> str:
    if q.denominator == 1:
        return int_to_str(q.numerator)
    return f"{int_to_str(q.numerator)}/{int_to_str(q.denominator)}"


def str_to_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    return Fraction(str_to_int(num), str_to_int(den) if sep else 1)


def gcd_rational(a: Fraction, b: Fraction) -> Fraction:
    """gcd of two positive rationals: gcd of numerators over lcm of denominators.

    >>> gcd_rational(Fraction(24, 5), Fraction(3, 5))
    Fraction(3, 5)
    """
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise ValueError("gcd_rational needs positive arguments")
    return Fraction(gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator))


def floor_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) by integer Newton iteration.

    The starting guess 2**ceil(bits(n)/k) is never below the true root, so the
    iterates decrease monotonically until they stop decreasing.
    """
    if n < 0 or k < 1:
        raise ValueError("floor_root needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    km1 = k - 1
    while True:
        y = (km1 * x + n // x**km1) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


def integer_nth_root(n: int, k: int) -> int | None:
    """The integer m with m**k == n, or None when n is not a perfect k-th power."""
    if k < 1:
        raise ValueError("root index must be positive")
    if n < 0:
        raise ValueError("integer_nth_root needs n >= 0")
    m = floor_root(n, k)
    return m if m**k == n else None


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin; deterministic below 2**64, probabilistic above.

    Random witnesses come from a generator seeded by ``n`` so repeated calls
    give repeatable answers.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES)
    rng = random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(rounds))


@dataclass(frozen=True)
class PerfectPowerDecomposition:
    root: int
    exponent: int
    newton_applications: int = 0
    # (prime, succeeded) for every Newton application, in order
    trials: tuple[tuple[int, bool], ...] = field(default=(), repr=False)

    @property
    def successes(self) -> int:
        return sum(ok for _, ok in self.trials)

    @property
    def failures(self) -> int:
        return sum(not ok for _, ok in self.trials)


def max_perfect_power(n: int, *, fast_path: bool = True) -> PerfectPowerDecomposition:
    """Decompose n as root**exponent with the exponent as large as possible.

    Successive primes p are tried, each repeated while it keeps producing an
    exact root; the search stops before a prime p with 2**p > root.  Every
    Newton application is recorded in ``trials``.

    ``fast_path`` adds two shortcuts that skip Newton applications: inputs
    of at most 4096 bits that test as probable primes return at once, and a
    prime p is passed over when the value is not a p-th power residue modulo
    a few small primes q = 1 (mod p).  Results are memoized.
    """
    if n < 2:
        raise ValueError("max_perfect_power needs n >= 2")
    return _max_perfect_power(n, fast_path)


# above this size a primality test costs more than the residue filter
_PRIMALITY_BITS = 4096
_RESIDUE_MODULI = 8


@lru_cache(maxsize=None)
def _residue_moduli(p: int) -> tuple[int, ...]:
    """Small primes q with q = 1 (mod p), so p-th powers are a 1/p share of units."""
    out = []
    q = p + 1 if p > 2 else 3
    step = p if p > 2 else 2
    while len(out) < _RESIDUE_MODULI and q < 1 << 20:
        if (q - 1) % p == 0 and is_probable_prime(q):
            out.append(q)
        q += step
    return tuple(out)


def _not_a_power(m: int, p: int) -> bool:
    for q in _residue_moduli(p):
        r = m % q
        if r and pow(r, (q - 1) // p, q) != 1:
            return True
    return False


@lru_cache(maxsize=4096)
def _max_perfect_power(n: int, fast_path: bool) -> PerfectPowerDecomposition:
    if fast_path and n.bit_length() <= _PRIMALITY_BITS and is_probable_prime(n):
        return PerfectPowerDecomposition(n, 1)
    m, k = n, 1
    trials = []
    for p in primes_up_to(n.bit_length()):
        if 1 << p > m:
            break
        while True:
            if fast_path and _not_a_power(m, p):
                break
            r = integer_nth_root(m, p)
            trials.append((p, r is not None))
            if r is None:
                break
            m, k = r, k * p
    return PerfectPowerDecomposition(m, k, len(trials), tuple(trials))


def clear_caches() -> None:
    """Forget memoized perfect-power decompositions (for cold benchmarks)."""
    _max_perfect_power.cache_clear()


def _prime_divisors_with_multiplicity(k: int) -> list[int]:
    out = []
    p = 2
    while p * p <= k:
        while k % p == 0:
            out.append(p)
            k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def _root_within(n: int, k: int) -> tuple[int, int]:
    """Largest divisor e of k such that n is a perfect e-th power, with that root."""
    e = 1
    for p in _prime_divisors_with_multiplicity(k):
        r = integer_nth_root(n, p)
        if r is not None:
            n, e = r, e * p
    return n, e


def max_perfect_power_rational(r: Fraction) -> tuple[Fraction, int]:
    """Maximal perfect-power decomposition of a positive rational r != 1."""
    r = Fraction(r)
    if r <= 0 or r == 1:
        raise ValueError("max_perfect_power_rational needs r > 0, r != 1")
    num, den = r.numerator, r.denominator
    if den == 1:
        d = max_perfect_power(num)
        return Fraction(d.root), d.exponent
    if num == 1:
        d = max_perfect_power(den)
        return Fraction(1, d.root), d.exponent
    small_is_num = num <= den
    first = max_perfect_power(num if small_is_num else den)
    if first.exponent == 1:
        return r, 1
    # the other side may only use primes dividing the first exponent
    other, k = _root_within(den if small_is_num else num, first.exponent)
    if k == 1:
        return r, 1
    first_root = first.root ** (first.exponent // k)
    if small_is_num:
        return Fraction(first_root, other), k
    return Fraction(other, first_root), k


def exact_rational_root(r: Fraction, d: int) -> Fraction | None:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("exact_rational_root needs r > 0")
    num = integer_nth_root(r.numerator, d)
    if num is None:
        return None
    den = integer_nth_root(r.denominator, d)
    if den is None:
        return None
    return Fraction(num, den)


def max_reciprocal_root(r: Fraction, exponent: Fraction) -> tuple[Fraction, int]:
    """Rewrite r**(n/d) as base**(1/q) with q as small as possible.

    Finds the largest divisor dbar of d with r an exact dbar-th power, then
    returns (rbar**n, d // dbar).  A returned q of 1 means the power is
    rational.
    """
    r, exponent = Fraction(r), Fraction(exponent)
    if r <= 0 or exponent <= 0:
        raise ValueError("max_reciprocal_root needs positive base and exponent")
    n, d = exponent.numerator, exponent.denominator
    num, den, dbar = r.numerator, r.denominator, 1
    for p in _prime_divisors_with_multiplicity(d):
        a = integer_nth_root(num, p)
        if a is None:
            continue
        b = integer_nth_root(den, p)
        if b is None:
            continue
        num, den, dbar = a, b, dbar * p
    return Fraction(num, den) ** n, d // dbar


@dataclass(frozen=True)
class BoundedFactorization:
    small_factors: tuple[tuple[int, int], ...]
    cofactor: int

    def value(self) -> int:
        v = self.cofactor
        for p, m in self.small_factors:
            v *= p**m
        return v


def factor_bounded(n: int, phat: int | None = None) -> BoundedFactorization:
    """Trial division of n by every prime <= phat."""
    if n < 1:
        raise ValueError("factor_bounded needs n >= 1")
    if phat is None:
        phat = get_config().phat
    found = []
    m = n
    for p in primes_up_to(phat):
        if p * p > m:
            break
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            found.append((p, k))
    # whatever survives p*p > m is 1 or a prime
    if 1 < m <= phat:
        found.append((m, 1))
        m = 1
    return BoundedFactorization(tuple(found), m)


class _CallCounter:
    def __init__(self):
        self._lock = threading.Lock()
        self.value = 0

    def bump(self):
        with self._lock:
            self.value += 1


_factor_full_counter = _CallCounter()


def factor_full_calls() -> int:
    """How many times factor_full has been entered in this process."""
    return _factor_full_counter.value


class _Budget:
    __slots__ = ("left",)

    def __init__(self, left):
        self.left = left


def _brent(n: int, budget: _Budget, rng: random.Random) -> int | None:
    """One nontrivial factor of composite n, or None once the budget runs out."""
    if n % 2 == 0:
        return 2
    while budget.left > 0:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget.left -= steps
                g = gcd(q, n)
                k += m
            r *= 2
            if budget.left <= 0 and g == 1:
                return None
        if g == n:
            while True:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g
    return None


def factor_full(n: int, budget: int | None = None) -> list[tuple[int, int]] | None:
    """Complete factorization as sorted (prime, multiplicity) pairs.

    Returns None when Pollard-Brent exceeds ``budget`` iterations in total.
    """
    _factor_full_counter.bump()
    if n < 1:
        raise ValueError("factor_full needs n >= 1")
    if budget is None:
        budget = get_config().factor_budget
    box = _Budget(budget)
    rng = random.Random(n)
    bounded = factor_bounded(n, 1000)
    counts: dict[int, int] = dict(bounded.small_factors)
    stack = [(bounded.cofactor, 1)]
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            counts[m] = counts.get(m, 0) + mult
            continue
        pp = max_perfect_power(m)
        if pp.exponent > 1:
            stack.append((pp.root, mult * pp.exponent))
            continue
        if box.left <= 0:
            return None
        f = _brent(m, box, rng)
        if f is None:
            return None
        # shared primes between the halves just accumulate in counts
        stack.extend([(f, mult), (m // f, mult)])
    return sorted(counts.items())
