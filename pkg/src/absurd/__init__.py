"""Exact arithmetic and canonical simplification for products of rational
powers of positive rationals, with display-form conversion."""
from .config import Config, configure, get_config
from .core import (
    ONE,
    ZERO,
    AbsurdNumber,
    Approx,
    Factor,
    add,
    coprime_refine,
    deserialize,
    equals,
    eval_approx,
    from_rational,
    is_zero,
    mul,
    negate,
    normalize_power,
    pow,
    refine_jointly,
    serialize,
)
from .errors import AbsurdError
from .expr import SumOfAbsurds, evaluate, parse, simplify
from .forms import DisplayForm, FormKind, convert, most_concise, render_latex, render_text

__all__ = [
    "Config",
    "configure",
    "get_config",
    "ONE",
    "ZERO",
    "AbsurdNumber",
    "Approx",
    "Factor",
    "add",
    "coprime_refine",
    "deserialize",
    "equals",
    "eval_approx",
    "from_rational",
    "is_zero",
    "mul",
    "negate",
    "normalize_power",
    "pow",
    "refine_jointly",
    "serialize",
    "AbsurdError",
    "SumOfAbsurds",
    "evaluate",
    "parse",
    "simplify",
    "DisplayForm",
    "FormKind",
    "convert",
    "most_concise",
    "render_latex",
    "render_text",
]
