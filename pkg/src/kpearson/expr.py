"""Parse textual polynomials / rational functions in x, y with named rational parameters."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

import sympy
from sympy.parsing.sympy_parser import (implicit_multiplication_application, parse_expr,
                                        standard_transformations, convert_xor)

from .algebra import BivariatePoly, RationalFunction2

_x, _y = sympy.symbols("x y")
_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication_application)


def _sympify(text: str, params: Mapping[str, Fraction]):
    # every identifier is a plain symbol, so names like "gamma" never resolve to sympy functions
    local = {name: sympy.Symbol(name) for name in re.findall(r"[A-Za-z_]\w*", text)}
    local.update({"x": _x, "y": _y})
    for k, v in params.items():
        local[k] = sympy.Rational(v.numerator, v.denominator)
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise ValueError(f"cannot parse {text!r}: {e}") from None
    extra = expr.free_symbols - {_x, _y}
    if extra:
        raise ValueError(f"unknown symbols in {text!r}: {', '.join(sorted(map(str, extra)))}")
    return expr


def _poly(expr) -> BivariatePoly:
    P = sympy.Poly(sympy.expand(expr), _x, _y)
    out = {}
    for m, c in P.terms():
        c = sympy.Rational(c)
        out[m] = Fraction(int(c.p), int(c.q))
    return BivariatePoly(out)


def parse_poly(text, params: Mapping[str, Fraction] = {}) -> BivariatePoly:
    """'(1 - x)*x', '1/2*(1-x)*y', or a {"terms": [...]} JSON object."""
    if isinstance(text, dict):
        return BivariatePoly.from_json(text)
    if isinstance(text, (int, Fraction)):
        return BivariatePoly.const(text)
    expr = sympy.together(_sympify(str(text), params))
    num, den = sympy.fraction(expr)
    if den.free_symbols:
        raise ValueError(f"{text!r} is not a polynomial")
    return _poly(num / den)


def parse_rf(text, params: Mapping[str, Fraction] = {}) -> RationalFunction2:
    if isinstance(text, dict) and "num" in text:
        return RationalFunction2(BivariatePoly.from_json(text["num"]), BivariatePoly.from_json(text["den"]))
    if isinstance(text, dict):
        return RationalFunction2.coerce(BivariatePoly.from_json(text))
    num, den = sympy.fraction(sympy.together(_sympify(str(text), params)))
    return RationalFunction2(_poly(num), _poly(den))
