"""Reference workloads: sixteen spellings of one number, their pairwise
differences, a difference of large-prime radicals, and perfect-power
detection on extreme inputs."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .config import configure
from .core import AbsurdNumber, normalize_power, serialize
from .errors import AbsurdError, Indeterminate
from .expr import SumOfAbsurds, evaluate
from .forms import FormKind, convert, render_text
from .numkernel import PerfectPowerDecomposition, clear_caches, factor_full_calls, max_perfect_power

# one expression per display form, in FormKind order
SIXTEEN_INPUTS = (
    "2^(4/3)*7^(2/3)/(3^(2/3)*5^(2/3))",
    "2/15*2^(1/3)*3^(1/3)*5^(1/3)*7^(2/3)",
    "14*2^(1/3)*3^(1/3)*5^(1/3)/(15*7^(1/3))",
    "2*2^(1/3)*7^(2/3)/(3^(2/3)*5^(2/3))",
    "2^(4/3)*7^(2/3)/15^(2/3)",
    "2/15*7^(2/3)*30^(1/3)",
    "14*30^(1/3)/(15*7^(1/3))",
    "2*2^(1/3)*7^(2/3)/15^(2/3)",
    "2*2^(1/3)*(7/15)^(2/3)",
    "14/15*(30/7)^(1/3)",
    "(28/15)^(2/3)",
    "28^(2/3)/15^(2/3)",
    "(784/225)^(1/3)",
    "784^(1/3)/225^(1/3)",
    "2/15*1470^(1/3)",
    "1/15*11760^(1/3)",
)

# the same number rendered in each form kind, in product layout
SIXTEEN_PRODUCT_FORMS = (
    "2^(4/3)*3^(-2/3)*5^(-2/3)*7^(2/3)",
    "2/15*2^(1/3)*3^(1/3)*5^(1/3)*7^(2/3)",
    "14/15*2^(1/3)*3^(1/3)*5^(1/3)*7^(-1/3)",
    "2*2^(1/3)*3^(-2/3)*5^(-2/3)*7^(2/3)",
    "2^(4/3)*7^(2/3)*15^(-2/3)",
    "2/15*7^(2/3)*30^(1/3)",
    "14/15*7^(-1/3)*30^(1/3)",
    "2*2^(1/3)*7^(2/3)*15^(-2/3)",
    "2*2^(1/3)*(7/15)^(2/3)",
    "14/15*(30/7)^(1/3)",
    "(28/15)^(2/3)",
    "15^(-2/3)*28^(2/3)",
    "(784/225)^(1/3)",
    "225^(-1/3)*784^(1/3)",
    "2/15*1470^(1/3)",
    "1/15*11760^(1/3)",
)

BIG_PRIME_A = 12345701
BIG_PRIME_B = 12345709
BIG_PRIME_DIFFERENCE = f"sqrt({BIG_PRIME_A}^2*{BIG_PRIME_B}) - {BIG_PRIME_A}*sqrt({BIG_PRIME_B})"

NEWTON_CASES = (
    ("6^210", 6**210),
    ("2^512", 2**512),
    ("p^2, p largest prime < 2^256", (2**256 - 189) ** 2),
    ("2^509", 2**509),
    ("largest prime < 2^512", 2**512 - 569),
)


def sixteen_number() -> AbsurdNumber:
    return normalize_power(Fraction(28, 15), Fraction(2, 3))


@dataclass
class Report:
    name: str
    ok: bool
    lines: list[str] = field(default_factory=list)
    seconds: float = 0.0


def table1() -> Report:
    """Each input simplifies to the same number, which renders as expected in every kind."""
    start = time.perf_counter()
    target = sixteen_number()
    report = Report("table1", True)
    for i, text in enumerate(SIXTEEN_INPUTS, 1):
        got = evaluate(text).as_absurd()
        same = got == target
        report.ok &= same
        report.lines.append(f"#{i:<2} {text:<42} -> {serialize(got)} {'ok' if same else 'MISMATCH'}")
    for kind, expected in zip(FormKind, SIXTEEN_PRODUCT_FORMS):
        shown = render_text(convert(target, kind))
        same = shown == expected
        report.ok &= same
        report.lines.append(f"{kind.value:>2} {kind.name:<28} {shown} {'ok' if same else 'expected ' + expected}")
    report.seconds = time.perf_counter() - start
    return report


def difference_outcome(left: str, right: str) -> tuple[SumOfAbsurds | None, str]:
    """The simplified difference and the outcome of dividing zero by it."""
    diff = evaluate(f"({left}) - ({right})")
    try:
        evaluate(f"0/(({left}) - ({right}))")
    except Indeterminate:
        return diff, "indeterminate"
    except AbsurdError as exc:
        return diff, type(exc).__name__
    return diff, "value"


def table2() -> Report:
    """All ordered pairs of inputs: the difference is 0 and 0/difference is 0/0."""
    start = time.perf_counter()
    report = Report("table2", True)
    hits = 0
    rows = []
    for left in SIXTEEN_INPUTS:
        marks = []
        for right in SIXTEEN_INPUTS:
            diff, outcome = difference_outcome(left, right)
            good = diff.is_zero and outcome == "indeterminate"
            hits += good
            marks.append("0/0" if good else " X ")
        rows.append(" ".join(marks))
    total = len(SIXTEEN_INPUTS) ** 2
    report.ok = hits == total
    report.lines = [f"{hits}/{total} indeterminate"] + rows
    report.seconds = time.perf_counter() - start
    return report


def table3() -> Report:
    """The large-prime radical difference cancels with no full factorization."""
    start = time.perf_counter()
    with configure(phat=1000):
        before = factor_full_calls()
        result = evaluate(BIG_PRIME_DIFFERENCE)
        calls = factor_full_calls() - before
    seconds = time.perf_counter() - start
    ok = result.is_zero and calls == 0
    return Report("table3", ok, [f"{BIG_PRIME_DIFFERENCE} = {result}", f"full factorizations: {calls}"], seconds)


def newton_bench() -> tuple[Report, list[PerfectPowerDecomposition]]:
    """Perfect-power detection on five extreme inputs, counting Newton applications."""
    clear_caches()
    start = time.perf_counter()
    results = [max_perfect_power(n, fast_path=False) for _, n in NEWTON_CASES]
    seconds = time.perf_counter() - start
    checks = newton_checks(results)
    lines = []
    for (label, n), d, good in zip(NEWTON_CASES, results, checks):
        primes = sorted({p for p, ok in d.trials if ok})
        lines.append(
            f"{label:<30} {len(str(n))} digits: exponent {d.exponent}, "
            f"{d.successes} successes {primes}, {d.failures} failures {'ok' if good else 'MISMATCH'}"
        )
    return Report("newton-bench", all(checks), lines, seconds), results


def newton_checks(results: list[PerfectPowerDecomposition]) -> list[bool]:
    one, two, three, four, five = results
    per_prime = {}
    for p, ok in one.trials:
        per_prime.setdefault(p, []).append(ok)
    return [
        one.exponent == 210 and per_prime == {p: [True, False] for p in (2, 3, 5, 7)},
        two.exponent == 512 and two.successes == 9 and {p for p, _ in two.trials} == {2},
        three.exponent == 2 and three.trials[0] == (2, True) and three.successes == 1,
        four.exponent == 509 and [p for p, ok in four.trials if ok] == [509],
        five.exponent == 1 and five.successes == 0,
    ]


RUNNERS = {"table1": table1, "table2": table2, "table3": table3, "newton-bench": lambda: newton_bench()[0]}
