import io
import json
import subprocess
import sys

import pytest

from absurd.cli import main
from absurd.core import deserialize
from absurd.expr import evaluate
from absurd.fixtures import SIXTEEN_INPUTS, SIXTEEN_PRODUCT_FORMS


def run(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old, sys.stdin = sys.stdin, io.StringIO(stdin)
    try:
        code = main(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


class TestSimplify:
    def test_requested_form(self):
        assert run("simplify", "(28/15)^(2/3)", "--form", "single_min_int_base") == (0, "2/15*1470^(1/3)\n", "")

    def test_indeterminate(self):
        code, out, _ = run("simplify", "0/(sqrt(2)-sqrt(2))")
        assert (code, out) == (2, "indeterminate (0/0)\n")

    def test_rational(self):
        assert run("simplify", "1+1")[:2] == (0, "2\n")

    def test_division_by_zero(self):
        code, _, err = run("simplify", "1/(1-1)")
        assert code == 3 and "division by zero" in err

    @pytest.mark.parametrize("text", ["2^x", "2+", "(-2)^(1/2)", "1/(1+sqrt(2))"])
    def test_errors_exit_one_with_caret(self, text):
        code, out, err = run("simplify", text)
        assert code == 1 and out == "" and err.rstrip().endswith("^")

    def test_usage_error_is_not_indeterminate(self):
        assert run("simplify", "2", "--form", "nonsense")[0] == 1
        assert run("simplify", "2", "--phat", "1")[0] == 1

    def test_stdin(self):
        assert run("simplify", "-", stdin="sqrt(8)\n")[:2] == (0, "2^(3/2)\n")

    def test_layout_and_latex(self):
        assert run("simplify", "(28/15)^(2/3)", "--form", "16", "--layout", "ratio")[1] == "11760^(1/3)/15\n"
        assert run("simplify", "(28/15)^(2/3)", "--form", "11", "--output", "latex")[1] == "\\left(\\frac{28}{15}\\right)^{2/3}\n"

    def test_json_round_trips(self):
        code, out, _ = run("simplify", "(28/15)^(2/3)", "--output", "json")
        data = json.loads(out)
        assert code == 0
        assert data["form"] == "single_min_int_base_proper"
        assert data["coefficient"] == "2/15" and data["terms"] == [{"base": "1470", "exp": "1/3"}]
        assert data["size"] == len("2/15*1470^(1/3)")
        assert deserialize(data["canonical"]) == evaluate("(28/15)^(2/3)").as_absurd()

    def test_json_negative_and_sum(self):
        data = json.loads(run("simplify", "--output", "json", "--", "-sqrt(2)")[1])
        assert data["coefficient"] == "-1"
        data = json.loads(run("simplify", "1 - sqrt(3)", "--output", "json")[1])
        assert data["text"] == "1 - 3^(1/2)" and len(data["sum"]) == 2

    def test_phat_flag_and_env(self, monkeypatch):
        assert run("simplify", "sqrt(1009)", "--phat", "10")[1] == "1009^(1/2)\n"
        monkeypatch.setenv("ABSURD_PHAT", "5")
        assert run("simplify", "sqrt(12)")[1] == "2*3^(1/2)\n"

    def test_deterministic(self):
        assert run("simplify", "sqrt(2)+sqrt(3)+sqrt(6)") == run("simplify", "sqrt(2)+sqrt(3)+sqrt(6)")


class TestAlts:
    def test_sixteen_rows(self):
        code, out, _ = run("alts", "(784/225)^(1/3)")
        rows = out.splitlines()
        assert code == 0 and len(rows) == 16
        for row, expected in zip(rows, SIXTEEN_PRODUCT_FORMS):
            assert row.split()[2] == expected
        assert sum("most concise" in r for r in rows) == 1

    def test_rational(self):
        code, out, _ = run("alts", "2")
        assert code == 0 and len(out.splitlines()) == 1 and "rational" in out

    def test_multi_term(self):
        code, _, err = run("alts", "sqrt(2)+sqrt(3)")
        assert code == 1 and "MultiTermResult" in err

    def test_budget_marks_unavailable(self):
        p, q = 1000000000000000000000000000057, 1000000000000000000000000000099
        code, out, _ = run("alts", f"({p}*{q})^(1/2)", "--budget", "1", "--output", "json")
        rows = json.loads(out)
        assert code == 0
        assert any(r["rendering"] == "unavailable (factoring budget)" for r in rows)
        assert any(r["most_concise"] for r in rows)


class TestEq:
    def test_sixteen_inputs(self):
        assert run("eq", SIXTEEN_INPUTS[0], SIXTEEN_INPUTS[12])[:2] == (0, "equal\n")

    def test_unequal(self):
        assert run("eq", "sqrt(2)", "sqrt(3)")[:2] == (4, "unequal\n")

    def test_large_primes(self):
        assert run("eq", "sqrt(12345701^2*12345709)", "12345701*sqrt(12345709)", "--phat", "1000")[:2] == (0, "equal\n")


class TestFixtures:
    @pytest.mark.parametrize("which", ["table1", "table3", "newton-bench"])
    def test_passes(self, which):
        code, out, _ = run("fixtures", which)
        assert code == 0 and f"== {which}: ok" in out

    def test_table2_counts(self):
        code, out, _ = run("fixtures", "table2")
        assert code == 0 and "256/256 indeterminate" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "absurd", "simplify", "2^(1/2)*2^(1/2)"],
                          capture_output=True, text=True, check=False)
    assert (proc.returncode, proc.stdout) == (0, "2\n")
