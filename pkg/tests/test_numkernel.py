import random
from fractions import Fraction
from math import gcd, isqrt

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from absurd.numkernel import (
    exact_rational_root,
    factor_bounded,
    factor_full,
    floor_root,
    gcd_rational,
    integer_nth_root,
    is_probable_prime,
    max_perfect_power,
    max_perfect_power_rational,
    max_reciprocal_root,
    primes_up_to,
)

F = Fraction


def brute_floor_root(n, k):
    # independent of Newton: binary search on exact powers
    lo, hi = 0, n + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def trial_factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class TestGcdRational:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            (F(4, 3), F(2, 3), F(2, 3)),
            (F(24, 5), F(3, 5), F(3, 5)),
            (F(1, 2), F(1, 3), F(1, 6)),
        ],
    )
    def test_examples(self, a, b, expected):
        assert gcd_rational(a, b) == expected

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            gcd_rational(F(0), F(1))

    def test_largest_common_divisor_on_grid(self):
        # q "divides" x when x/q is an integer
        grid = [F(n, d) for n in range(1, 13) for d in range(1, 13)]
        candidates = {F(n, d) for n in range(1, 13) for d in range(1, 150)}
        for a in grid[::7]:
            for b in grid[::5]:
                g = gcd_rational(a, b)
                assert (a / g).denominator == 1 and (b / g).denominator == 1
                best = max(q for q in candidates if (a / q).denominator == 1 and (b / q).denominator == 1)
                assert g == best


class TestIntegerNthRoot:
    def test_examples(self):
        assert integer_nth_root(1470, 3) is None
        assert integer_nth_root(784, 2) == 28
        assert integer_nth_root(2**512, 2) == 2**256

    def test_exhaustive_small_range(self):
        # every perfect power in [2, 10**6] for k in [2, 20], against enumeration
        limit = 10**6
        for k in range(2, 21):
            powers = {m**k for m in range(2, brute_floor_root(limit, k) + 1)}
            for n in range(2, limit + 1, 997):
                assert (integer_nth_root(n, k) is not None) == (n in powers)
            for n in powers:
                assert integer_nth_root(n, k) ** k == n
                assert integer_nth_root(n + 1, k) is None

    @given(st.integers(min_value=0, max_value=10**80), st.integers(min_value=1, max_value=40))
    def test_bracket(self, n, k):
        x = floor_root(n, k)
        assert x**k <= n < (x + 1) ** k

    @given(st.integers(min_value=2, max_value=10**6), st.integers(min_value=2, max_value=20))
    def test_agrees_with_binary_search(self, n, k):
        assert floor_root(n, k) == brute_floor_root(n, k)


class TestMaxPerfectPower:
    def test_six_to_210(self):
        d = max_perfect_power(6**210, fast_path=False)
        assert (d.root, d.exponent) == (6, 210)
        assert d.trials == ((2, True), (2, False), (3, True), (3, False),
                            (5, True), (5, False), (7, True), (7, False))

    def test_two_to_512(self):
        d = max_perfect_power(2**512, fast_path=False)
        assert (d.root, d.exponent) == (2, 512)
        assert d.successes == 9
        assert all(p == 2 for p, _ in d.trials)

    def test_imperfect(self):
        d = max_perfect_power(11760)
        assert (d.root, d.exponent) == (11760, 1)
        facts = trial_factor(11760)
        assert facts == {2: 4, 3: 1, 5: 1, 7: 2}
        assert gcd(*facts.values()) == 1

    def test_fast_path_skips_newton(self):
        d = max_perfect_power(1000003)
        assert (d.root, d.exponent, d.newton_applications) == (1000003, 1, 0)

    @settings(max_examples=300)
    @given(st.integers(min_value=2, max_value=10**12), st.booleans())
    def test_reconstructs_and_is_maximal(self, n, fast):
        d = max_perfect_power(n, fast_path=fast)
        assert d.root**d.exponent == n
        expected = 0
        for e in trial_factor(n).values():
            expected = gcd(expected, e)
        assert d.exponent == expected
        for p in primes_up_to(d.root.bit_length()):
            if 2**p <= d.root:
                assert integer_nth_root(d.root, p) is None

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=2, max_value=2**200), st.integers(min_value=1, max_value=40))
    def test_fast_path_agrees_on_large_inputs(self, m, k):
        fast, plain = max_perfect_power(m**k), max_perfect_power(m**k, fast_path=False)
        assert (fast.root, fast.exponent) == (plain.root, plain.exponent)
        assert fast.newton_applications <= plain.newton_applications

    def test_huge_input_is_quick(self):
        # a random 20000-bit odd number, almost surely not a perfect power
        n = random.Random(5).getrandbits(20000) | 1 | 1 << 19999
        d = max_perfect_power(n)
        assert d.root ** d.exponent == n and d.newton_applications < 50

    @given(st.integers(min_value=2, max_value=500), st.integers(min_value=1, max_value=12))
    def test_powers_of_small_bases(self, m, k):
        d = max_perfect_power(m**k)
        assert d.root ** d.exponent == m**k
        assert d.exponent % k == 0


class TestRationalPowers:
    @pytest.mark.parametrize(
        "r, expected",
        [
            (F(784, 225), (F(28, 15), 2)),
            (F(576, 25), (F(24, 5), 2)),
            (F(28, 15), (F(28, 15), 1)),
            (F(1, 8), (F(1, 2), 3)),
            (F(27), (F(3), 3)),
            (F(4, 27), (F(4, 27), 1)),
            (F(64, 729), (F(2, 3), 6)),
            (F(729, 64), (F(3, 2), 6)),
            (F(2**6, 3**4), (F(8, 9), 2)),
        ],
    )
    def test_max_perfect_power_rational(self, r, expected):
        assert max_perfect_power_rational(r) == expected

    @given(st.fractions(min_value=F(1, 10**6), max_value=10**6, max_denominator=10**6).filter(lambda q: q != 1),
           st.integers(min_value=1, max_value=6))
    def test_rational_maximality(self, base, k):
        r = base**k
        root, e = max_perfect_power_rational(r)
        assert root**e == r
        expected = 0
        for v in list(trial_factor(base.numerator).values()) + list(trial_factor(base.denominator).values()):
            expected = gcd(expected, v * k)
        assert e == expected

    def test_exact_rational_root(self):
        assert exact_rational_root(F(8, 27), 3) == F(2, 3)
        assert exact_rational_root(F(8, 27), 2) is None
        assert exact_rational_root(F(12345701**2), 2) == 12345701

    def test_max_reciprocal_root(self):
        assert max_reciprocal_root(F(9, 4), F(1, 4)) == (F(3, 2), 2)
        big = max_reciprocal_root(F(29**31, 2), F(1, 10))
        assert big == (F(2159424054808578564166497528588784562372597429, 2), 10)
        assert str(big[0].numerator) == "2159424054808578564166497528588784562372597429"
        assert max_reciprocal_root(F(256, 81), F(1, 4)) == (F(4, 3), 1)
        assert max_reciprocal_root(F(8, 27), F(1, 2)) == (F(8, 27), 2)
        assert max_reciprocal_root(F(8, 27), F(2, 3)) == (F(4, 9), 1)

    @given(st.fractions(min_value=F(1, 1000), max_value=1000, max_denominator=1000).filter(lambda q: q > 0),
           st.fractions(min_value=F(1, 60), max_value=5, max_denominator=60).filter(lambda q: q > 0))
    def test_reciprocal_value_preserved(self, r, alpha):
        base, q = max_reciprocal_root(r, alpha)
        # r**alpha == base**(1/q)  <=>  r**(alpha*q) == base, both exact rationals
        n, d = (alpha * q).numerator, (alpha * q).denominator
        assert r**n == base**d


class TestFactoring:
    def test_bounded_examples(self):
        fb = factor_bounded(11760, 1000)
        assert fb.small_factors == ((2, 4), (3, 1), (5, 1), (7, 2)) and fb.cofactor == 1
        n = 12345701**2 * 12345709
        assert sympy.isprime(12345701) and sympy.isprime(12345709)
        assert factor_bounded(n, 1000).small_factors == ()
        assert factor_bounded(n, 1000).cofactor == n
        assert factor_bounded(1, 1000) == factor_bounded(1, 2)
        assert factor_bounded(1, 1000).cofactor == 1

    @given(st.integers(min_value=1, max_value=10**15), st.integers(min_value=2, max_value=2000))
    def test_bounded_reconstruction(self, n, phat):
        fb = factor_bounded(n, phat)
        assert fb.value() == n
        ps = [p for p, _ in fb.small_factors]
        assert ps == sorted(set(ps)) and all(p <= phat for p in ps)
        assert all(fb.cofactor % p for p in primes_up_to(phat))

    def test_full_examples(self):
        assert factor_full(1470) == [(2, 1), (3, 1), (5, 1), (7, 2)]
        assert factor_full(2910600) == [(2, 3), (3, 3), (5, 2), (7, 2), (11, 1)]

    def test_full_budget_exhaustion(self):
        p = sympy.nextprime(10**29)
        q = sympy.nextprime(3 * 10**29)
        assert factor_full(p * q, budget=1) is None

    @settings(max_examples=200)
    @given(st.integers(min_value=2, max_value=10**24))
    def test_full_matches_sympy(self, n):
        assert factor_full(n) == sorted(sympy.factorint(n).items())

    def test_full_semiprime_and_powers(self):
        p, q = sympy.nextprime(10**9), sympy.nextprime(10**10)
        assert factor_full(p**3 * q**2 * 12) == [(2, 2), (3, 1), (p, 3), (q, 2)]

    @given(st.integers(min_value=2, max_value=10**7))
    def test_probable_prime_agrees(self, n):
        assert is_probable_prime(n) == sympy.isprime(n)

    def test_probable_prime_large(self):
        assert is_probable_prime(2**256 - 189)
        assert is_probable_prime(2**521 - 1)
        assert not is_probable_prime((2**127 - 1) * (2**89 - 1))


class TestDigitConversion:
    def test_round_trip_beyond_interpreter_cap(self):
        from absurd.numkernel import int_to_str, rational_to_str, str_to_int, str_to_rational

        n = 7**20000
        text = int_to_str(n)
        assert len(text) == 16902 and str_to_int(text) == n
        q = F(-(3**9000), 2**15000)
        assert str_to_rational(rational_to_str(q)) == q
        assert rational_to_str(F(-2, 15)) == "-2/15" and str_to_int("-12") == -12
        with pytest.raises(ValueError):
            str_to_int("12a")
