"""Command-line front end.

    absurd simplify EXPR [--form KIND] [--output text|latex|json] [--layout product|ratio]
    absurd alts EXPR
    absurd eq EXPR EXPR
    absurd fixtures table1|table2|table3|newton-bench|all

EXPR may be "-" to read standard input.  Exit codes: 0 success,
1 syntax or domain error (or a fixture mismatch), 2 indeterminate 0/0,
3 division by zero, 4 the two expressions of ``eq`` differ.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .config import Config, configure
from .core import AbsurdNumber, serialize
from .errors import AbsurdError, DivisionByZero, FactoringBudgetExhausted, Indeterminate
from .expr import SumOfAbsurds, abs_term, display_form, evaluate
from .fixtures import RUNNERS
from .forms import FormKind, convert, render_latex, render_text, size_of
from .numkernel import rational_to_str

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INDETERMINATE = 2
EXIT_DIVISION_BY_ZERO = 3
EXIT_UNEQUAL = 4


def _form_arg(text: str) -> FormKind | str:
    if text in ("auto", "canonical"):
        return text
    try:
        return FormKind.lookup(text)
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--phat", type=int, default=None, help="trial-division bound (default 1000, env ABSURD_PHAT)")
    common.add_argument("--budget", type=_nonnegative, default=None,
                        help="Pollard-rho iteration budget for display forms (env ABSURD_BUDGET)")
    common.add_argument("--form", type=_form_arg, default="auto", help="display form name or number, 'canonical' or 'auto'")
    common.add_argument("--output", choices=("text", "latex", "json"), default="text")
    common.add_argument("--layout", choices=("product", "ratio"), default="product")

    parser = argparse.ArgumentParser(prog="absurd", description="Exact arithmetic on products of rational powers.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("simplify", parents=[common], help="simplify an expression")
    p.add_argument("expr")
    p = sub.add_parser("alts", parents=[common], help="list every display form with its size")
    p.add_argument("expr")
    p = sub.add_parser("eq", parents=[common], help="test two expressions for equality")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("fixtures", parents=[common], help="run a reference workload")
    p.add_argument("which", choices=tuple(RUNNERS) + ("all",))
    return parser


def _read(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _form_json(a: AbsurdNumber, form) -> dict:
    return {
        "form": form.kind.name,
        "coefficient": rational_to_str(form.coefficient * (-1 if a.coefficient < 0 else 1)),
        "terms": [{"base": rational_to_str(b), "exp": f"{e.numerator}/{e.denominator}"} for b, e in form.terms],
        "size": size_of(form).size,
        "canonical": serialize(a),
    }


def sum_json(s: SumOfAbsurds, form, layout: str) -> dict:
    """One object for a single absurd number; a list of them under "sum" otherwise."""
    if s.is_zero:
        return {"form": "rational", "coefficient": "0", "terms": [], "size": 1, "canonical": "0"}
    items = [_form_json(t, display_form(abs_term(t), form, layout)) for t in s.terms]
    if len(items) == 1:
        return items[0]
    return {"sum": items, "text": s.render(form, layout)}


def cmd_simplify(args, out) -> int:
    s = evaluate(_read(args.expr))
    if args.output == "json":
        print(json.dumps(sum_json(s, args.form, args.layout)), file=out)
    else:
        print(s.render(args.form, args.layout, latex=args.output == "latex"), file=out)
    return EXIT_OK


def cmd_alts(args, out) -> int:
    a = evaluate(_read(args.expr)).as_absurd()
    draw = render_latex if args.output == "latex" else render_text
    rows = []
    if a.is_rational:
        rows.append({"number": 0, "form": "rational", "rendering": rational_to_str(a.coefficient),
                     "size": len(rational_to_str(a.coefficient))})
    else:
        for kind in FormKind:
            try:
                form = convert(a, kind, layout=args.layout)
            except FactoringBudgetExhausted:
                rows.append({"number": kind.value, "form": kind.name,
                             "rendering": "unavailable (factoring budget)", "size": None})
                continue
            rows.append({"number": kind.value, "form": kind.name, "rendering": draw(form),
                         "size": size_of(form).size})
    sizes = [r["size"] for r in rows if r["size"] is not None]
    best = min(sizes) if sizes else None
    for r in rows:
        r["most_concise"] = r["size"] is not None and r["size"] == best
    if args.output == "json":
        print(json.dumps(rows), file=out)
        return EXIT_OK
    width = max(len(r["rendering"]) for r in rows)
    for r in rows:
        size = "-" if r["size"] is None else str(r["size"])
        flag = "  <- most concise" if r["most_concise"] else ""
        print(f"{r['number']:>2}  {r['form']:<28} {r['rendering']:<{width}}  {size:>4}{flag}", file=out)
    return EXIT_OK


def cmd_eq(args, out) -> int:
    left, right = evaluate(_read(args.left)), evaluate(_read(args.right))
    same = (left - right).is_zero
    print("equal" if same else "unequal", file=out)
    return EXIT_OK if same else EXIT_UNEQUAL


def cmd_fixtures(args, out) -> int:
    names = list(RUNNERS) if args.which == "all" else [args.which]
    ok = True
    for name in names:
        report = RUNNERS[name]()
        ok &= report.ok
        print(f"== {name}: {'ok' if report.ok else 'MISMATCH'} ({report.seconds * 1000:.1f} ms)", file=out)
        for line in report.lines:
            print(line, file=out)
    return EXIT_OK if ok else EXIT_ERROR


COMMANDS = {"simplify": cmd_simplify, "alts": cmd_alts, "eq": cmd_eq, "fixtures": cmd_fixtures}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors must not collide with the 0/0 exit code
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        base = Config.from_env()
        config = Config(
            phat=base.phat if args.phat is None else args.phat,
            factor_budget=base.factor_budget if args.budget is None else args.budget,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR
    try:
        with configure(config):
            return COMMANDS[args.command](args, out)
    except Indeterminate:
        print("indeterminate (0/0)", file=out)
        return EXIT_INDETERMINATE
    except DivisionByZero as exc:
        print(f"error: {exc}", file=err)
        if exc.text is not None:
            print(exc.caret(), file=err)
        return EXIT_DIVISION_BY_ZERO
    except AbsurdError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        if exc.text is not None and exc.position is not None:
            print(exc.caret(), file=err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
