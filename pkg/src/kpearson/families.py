"""Registry of the worked example families.

Each entry records how to build the Koornwinder system, the displays printed
for it in the literature (raw system, symmetrizer, Pearson pairs, auxiliary
functions, operator) as plain expressions in x, y and the parameters, plus the
closed-form eigenvalue / band formulas.  Displays known to be misprinted are
kept verbatim and flagged, next to the corrected form where one is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .algebra import as_fraction, fraction_str
from .expr import parse_poly, parse_rf
from .koornwinder import KoornwinderSystem, RhoFunction, make_system
from .operators import Formula, Index
from .pearson import (DecompositionInput, PearsonPair, Symmetrizer, decomposition_method, raw_system,
                      symmetrize_with, verify_divergence_form)
from .weights import jacobi01, jacobi_sym, laguerre

Params = Dict[str, Fraction]


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class PrintedPair:
    """Gradient form Phi grad(w) = psi_tilde w as printed."""

    label: str
    Phi: Tuple[Tuple[str, str], Tuple[str, str]]
    psi_tilde: Tuple[str, str]
    final: bool = False
    erratum: str = ""


@dataclass(frozen=True)
class PrintedAux:
    label: str
    a: str
    b: str
    c: str
    registered: bool = True
    erratum: str = ""


@dataclass(frozen=True)
class EigenFormula:
    name: str
    fn: Callable[[int, int, Params], Dict[Index, Fraction]]

    def bind(self, p: Params) -> Tuple[str, Formula]:
        return self.name, (lambda n, m: self.fn(n, m, p))


@dataclass(frozen=True)
class Family:
    name: str
    title: str
    defaults: Tuple[Tuple[str, Fraction], ...]
    build: Callable[[Params], KoornwinderSystem]
    raw: Optional[PrintedPair] = None
    S: Optional[Tuple[Tuple[str, str], Tuple[str, str]]] = None
    S_corrected: Optional[Tuple[Tuple[str, str], Tuple[str, str]]] = None
    S_erratum: str = ""
    pairs: Tuple[PrintedPair, ...] = ()
    aux: Tuple[PrintedAux, ...] = ()
    operator: Optional[Dict[str, str]] = None
    operator_source: str = "symmetrizer"
    operator_note: str = ""
    manual_pair: Optional[PrintedPair] = None
    formulas: Tuple[EigenFormula, ...] = ()
    extra_constraints: Tuple[Tuple[str, Callable[[Params], Fraction]], ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def param_names(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self.defaults)

    @property
    def final_pair(self) -> Optional[PrintedPair]:
        return next((p for p in self.pairs if p.final), None)

    @property
    def errata(self) -> List[str]:
        out = []
        if self.raw is not None and self.raw.erratum:
            out.append(f"raw system: {self.raw.erratum}")
        if self.S_erratum:
            out.append(f"symmetrizer: {self.S_erratum}")
        out += [f"{p.label}: {p.erratum}" for p in self.pairs if p.erratum]
        out += [f"auxiliary functions ({a.label}): {a.erratum}" for a in self.aux if a.erratum]
        if self.operator_note:
            out.append(f"operator: {self.operator_note}")
        return out


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

def resolve_params(fam: Family, overrides: Mapping[str, object] = {}) -> Params:
    p = dict(fam.defaults)
    for k, v in overrides.items():
        if k not in p:
            raise FamilyError(f"family {fam.name!r} has no parameter {k!r} (expected {', '.join(fam.param_names)})")
        try:
            p[k] = as_fraction(v) if not isinstance(v, float) else Fraction(v).limit_denominator()
        except (ValueError, ZeroDivisionError, TypeError):
            raise FamilyError(f"parameter {k} = {v!r} is not an exact rational") from None
    for k, v in p.items():
        if not v > -1:
            raise FamilyError(f"constraint {k} > -1 violated ({k} = {fraction_str(v)})")
    for label, f in fam.extra_constraints:
        if not f(p) > -1:
            raise FamilyError(f"constraint {label} > -1 violated ({label} = {fraction_str(f(p))})")
    return p


def _mat(M, p) -> Tuple:
    return tuple(tuple(parse_poly(e, p) for e in row) for row in M)


def printed_pair_polys(pp: PrintedPair, p: Params):
    return _mat(pp.Phi, p), tuple(parse_poly(e, p) for e in pp.psi_tilde)


def printed_symmetrizer(M, p: Params) -> Symmetrizer:
    return Symmetrizer.of(*(parse_rf(e, p) for row in M for e in row))


def system(fam: Family, p: Params) -> KoornwinderSystem:
    return fam.build(p)


def decomposition_inputs(fam: Family, p: Params, sys: KoornwinderSystem,
                         registered_only: bool = False) -> List[Tuple[PrintedAux, DecompositionInput]]:
    out = []
    for aux in fam.aux:
        if registered_only and not aux.registered:
            continue
        inp = DecompositionInput.from_auxiliary(sys, parse_rf(aux.a, p), parse_rf(aux.b, p), parse_rf(aux.c, p))
        out.append((aux, inp))
    return out


def operator_pair(fam: Family, p: Params, sys: Optional[KoornwinderSystem] = None) -> PearsonPair:
    """The verified pair whose operator is used for classification."""
    sys = sys or system(fam, p)
    if fam.operator_source == "symmetrizer":
        S = fam.S_corrected or fam.S
        return symmetrize_with(printed_symmetrizer(S, p), raw_system(sys), sys)
    if fam.operator_source == "decomposition":
        aux, inp = decomposition_inputs(fam, p, sys, registered_only=True)[0]
        return decomposition_method(inp, sys)
    Phi, psit = printed_pair_polys(fam.manual_pair, p)
    v = verify_divergence_form(PearsonPair.from_gradient_form(Phi, psit, "manual"), sys)
    if not v.passed:
        raise FamilyError(f"registered manual pair for {fam.name} fails verification")
    return v.pair


def printed_operator(fam: Family, p: Params):
    from .operators import DiffOperator2
    if fam.operator is None:
        return None
    o = fam.operator
    return DiffOperator2(*(parse_poly(o[k], p) for k in ("c_xx", "c_xy", "c_yy", "c_x", "c_y")))


# ---------------------------------------------------------------------------
# eigenvalue / band formulas
# ---------------------------------------------------------------------------

def _diag(f):
    return lambda n, m, p: {(n, m): f(n, m, p)}


def _lj_band(n, m, p):
    b = p["beta"]
    out = {(n, m): -n - m * (m + b)}
    if m >= 1:
        out[(n, m - 1)] = -(m - 1) * (b + 1)
    if m >= 2:
        out[(n, m - 2)] = Fraction(m * (m - 1))
    return out


def _ll_band(n, m, p):
    a, b = p["alpha"], p["beta"]
    out = {(n + 1, m): Fraction(-(n - m)), (n, m): (n - m) * (n - m + a + b) - m}
    if m + 1 <= n:
        out[(n, m + 1)] = Fraction(n - m + m * (m - 1))
    if m >= 1:
        out[(n, m - 1)] = (m - 1) * (b + 2)
    return out


def _tensor_jacobi(n, m, p):
    k = n - m
    return {(n, m): -k * (k + p["alpha1"] + p["beta1"] + 1) - m * (m + p["alpha2"] + p["beta2"] + 1)}


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

F = Fraction

BALL = Family(
    name="ball",
    title="Ball polynomials",
    defaults=(("alpha", F(1)),),
    build=lambda p: make_system(jacobi_sym(p["alpha"], p["alpha"]), jacobi_sym(p["alpha"], p["alpha"]),
                                RhoFunction.sqrt(-1, 0, 1), "ball"),
    raw=PrintedPair("raw system", (("1-x^2", "-x*y"), ("0", "1-x^2-y^2")), ("-2*alpha*x", "-2*alpha*y")),
    S=(("1", "0"), ("-x*y/(1-x^2)", "1/(1-x^2)")),
    pairs=(
        PrintedPair("symmetrized pair", (("1-x^2", "-x*y"), ("-x*y", "1-y^2")), ("-2*alpha*x", "-2*alpha*y"),
                    final=True),
        PrintedPair("diagonal pair", (("1-x^2-y^2", "0"), ("0", "1-x^2-y^2")), ("-2*alpha*x", "-2*alpha*y")),
    ),
    aux=(
        PrintedAux("first choice", "(1-x^2)/(1-x^2-y^2)", "-x*y/(1-x^2-y^2)", "(1-y^2)/(1-x^2-y^2)"),
        PrintedAux("second choice", "1", "0", "1", registered=False,
                   erratum="ac - b^2 = 1 is not 1/E; the pair is valid but the determinant identity fails"),
    ),
    operator={"c_xx": "1-x^2", "c_xy": "-x*y", "c_yy": "1-y^2",
              "c_x": "-(2*alpha+3)*x", "c_y": "-(2*alpha+3)*y"},
    formulas=(EigenFormula("-n(n+2alpha+2)", _diag(lambda n, m, p: -n * (n + 2 * p["alpha"] + 2))),),
)

BIANGLE = Family(
    name="biangle",
    title="Koornwinder polynomials over the parabolic biangle",
    defaults=(("alpha", F(1)), ("beta", F(1))),
    build=lambda p: make_system(jacobi01(p["alpha"], p["beta"]), jacobi_sym(p["beta"], p["beta"]),
                                RhoFunction.sqrt(0, 1, 0), "biangle"),
    raw=PrintedPair("raw system", (("(1-x)*x", "1/2*(1-x)*y"), ("0", "x-y^2")),
                    ("beta-(alpha+beta)*x", "-2*beta*y")),
    S=(("1", "0"), ("y/(2*x)", "-1/(4*x)")),
    S_corrected=(("1", "0"), ("y/(2*x)", "1/(4*x)")),
    S_erratum="D = -1/(4x) gives a non-polynomial Phi22; D = +1/(4x) gives the printed pair",
    pairs=(
        PrintedPair("symmetrized pair", (("(1-x)*x", "1/2*(1-x)*y"), ("1/2*(1-x)*y", "1/4*(1-y^2)")),
                    ("beta-(alpha+beta)*x", "-1/2*(alpha+beta)*y"), final=True),
    ),
    aux=(PrintedAux("printed choice", "2*x/(x-y^2)", "y/(x-y^2)", "(1-y^2)/(2*(1-x)*(x-y^2))"),),
    operator={"c_xx": "2*(1-x)*x", "c_xy": "(1-x)*y", "c_yy": "1/2*(1-y^2)",
              "c_x": "2*beta+3-(2*alpha+2*beta+5)*x", "c_y": "-(alpha+beta+2)*y"},
    operator_source="decomposition",
    operator_note="the printed operator is built from 2x the symmetrized pair, i.e. the decomposition pair",
    formulas=(
        EigenFormula("-[(n-m)(2n+2alpha+2beta+5)+m(m+2alpha+2beta+3)/2]",
                     _diag(lambda n, m, p: -((n - m) * (2 * n + 2 * p["alpha"] + 2 * p["beta"] + 5)
                                             + F(1, 2) * m * (m + 2 * p["alpha"] + 2 * p["beta"] + 3)))),
        EigenFormula("-[(n-m)(2n+2alpha+2beta+3)+m(m+2alpha+2beta+3)/2]",
                     _diag(lambda n, m, p: -((n - m) * (2 * n + 2 * p["alpha"] + 2 * p["beta"] + 3)
                                             + F(1, 2) * m * (m + 2 * p["alpha"] + 2 * p["beta"] + 3)))),
    ),
    notes=("printed eigenvalue uses 2n+2alpha+2beta+5; the operator gives 2n+2alpha+2beta+3",),
)

TRIANGLE = Family(
    name="triangle",
    title="Koornwinder polynomials over the triangle",
    defaults=(("alpha", F(1, 2)), ("beta", F(1, 3)), ("gamma", F(2))),
    build=lambda p: make_system(jacobi01(p["alpha"], p["beta"] + p["gamma"]), jacobi01(p["beta"], p["gamma"]),
                                RhoFunction.linear(1, 0), "triangle"),
    raw=PrintedPair("raw system", (("(1-x)*x", "(1-x)*y"), ("0", "(x-y)*y")),
                    ("beta+gamma-(alpha+beta+gamma)*x", "gamma*x-(beta+gamma)*y")),
    S=(("1", "0"), ("y/x", "1/x")),
    pairs=(
        PrintedPair("symmetrized pair", (("(1-x)*x", "(1-x)*y"), ("(1-x)*y", "(1-y)*y")),
                    ("beta+gamma-(alpha+beta+gamma)*x", "gamma-(alpha+beta+gamma)*y"), final=True),
    ),
    aux=(PrintedAux("printed choice", "x/((x-y)*y)", "1/(x-y)", "(1-y)/((1-x)*(x-y))"),),
    operator={"c_xx": "(1-x)*x", "c_xy": "(1-x)*y", "c_yy": "(1-y)*y",
              "c_x": "beta+gamma+2-(alpha+beta+gamma+3)*x", "c_y": "gamma+1-(alpha+beta+gamma+3)*y"},
    formulas=(EigenFormula("-n(n+alpha+beta+gamma+2)",
                           _diag(lambda n, m, p: -n * (n + p["alpha"] + p["beta"] + p["gamma"] + 2))),),
)

LAGUERRE_JACOBI = Family(
    name="laguerre_jacobi",
    title="Laguerre-Jacobi Koornwinder polynomials",
    defaults=(("alpha", F(1)), ("beta", F(1))),
    build=lambda p: make_system(laguerre(p["alpha"]), jacobi_sym(p["beta"], 0), RhoFunction.linear(1, 0),
                                "laguerre_jacobi"),
    raw=PrintedPair("raw system", (("x", "y"), ("0", "x^2-y^2")), ("alpha-x", "-beta*(x+y)")),
    S=(("1", "1/(x+y)"), ("1", "1+1/(x+y)")),
    pairs=(
        PrintedPair("symmetrized pair", (("x", "x"), ("x", "x^2-y^2+x")),
                    ("alpha-beta-x", "-beta*(x+y)+(alpha-beta-x)"), final=True),
        PrintedPair("decomposition pair", (("x", "x"), ("x", "x^2-y^2+y")),
                    ("alpha-beta-x", "-beta*(x+y)+alpha-x")),
    ),
    aux=(
        PrintedAux("corrected choice", "1/(x^2-y^2)", "1/(x^2-y^2)", "(x^2-y^2+x)/(x*(x^2-y^2))"),
        PrintedAux("printed choice", "1/(x^2-y^2)", "1/(x^2-y^2)", "(x^2-y^2+y)/(x*(x^2-y^2))",
                   registered=False,
                   erratum="ac - b^2 = (x^2-y^2+y-x)/(x(x^2-y^2)^2) is not 1/E; "
                           "c = (x^2-y^2+x)/(x(x^2-y^2)) satisfies the identity"),
    ),
    operator={"c_xx": "x", "c_xy": "x", "c_yy": "x^2-y^2+x",
              "c_x": "1+alpha-beta-x", "c_y": "alpha-beta+1-(1+beta)*x-(2+beta)*y"},
    formulas=(EigenFormula("lambda_{n,m}=-n-m(m+beta), lambda_{n,m-1}=-(m-1)(beta+1), lambda_{n,m-2}=m(m-1)",
                           _lj_band),),
)

LAGUERRE_LAGUERRE = Family(
    name="laguerre_laguerre",
    title="Laguerre-Laguerre Koornwinder polynomials",
    defaults=(("alpha", F(2)), ("beta", F(1, 2))),
    build=lambda p: make_system(laguerre(p["alpha"]), laguerre(p["beta"]), RhoFunction.linear(1, 0),
                                "laguerre_laguerre"),
    extra_constraints=(("alpha-beta", lambda p: p["alpha"] - p["beta"]),),
    raw=PrintedPair("raw system", (("x", "y"), ("0", "x*y")), ("alpha-x", "(beta+1)*x-y"),
                    erratum="delta2 = (beta+1)x - y fails the gradient identity (residual x); beta*x - y passes"),
    S=(("x", "0"), ("y", "1")),
    pairs=(
        PrintedPair("symmetrized pair", (("x^2", "x*y"), ("x*y", "(x+y)*y")),
                    ("(alpha-x)*x", "(alpha-1)*y+beta*x-x*y"), final=True),
        PrintedPair("diagonal pair", (("x^2", "0"), ("0", "x*y")), ("(alpha-beta-1-x)*x+y", "(beta+1)*x-y"),
                    erratum="fails the gradient identity (residual -x, x); "
                            "the valid vector is ((alpha-beta-x)x+y, beta*x-y)"),
    ),
    aux=(PrintedAux("printed choice", "1/(x*y)", "1/x^2", "(x+y)/x^3"),),
    operator={"c_xx": "x^2", "c_xy": "0", "c_yy": "x*y",
              "c_x": "(alpha-beta+1-x)*x+y", "c_y": "(beta+2)*x-y"},
    operator_source="manual",
    manual_pair=PrintedPair("corrected diagonal pair", (("x^2", "0"), ("0", "x*y")),
                            ("(alpha-beta-x)*x+y", "beta*x-y")),
    operator_note="the printed operator comes from the misprinted diagonal pair; "
                  "classification uses the corrected diagonal pair",
    formulas=(EigenFormula("lambda_{n+1,m}=-(n-m), lambda_{n,m+1}=n-m+m(m-1), "
                           "lambda_{n,m}=(n-m)(n-m+alpha+beta)-m, lambda_{n,m-1}=(m-1)(beta+2)", _ll_band),),
)

TENSOR = Family(
    name="tensor",
    title="Tensor product of Jacobi weights (rho = 1)",
    defaults=(("alpha1", F(1, 2)), ("beta1", F(0)), ("alpha2", F(1)), ("beta2", F(2))),
    build=lambda p: make_system(jacobi_sym(p["alpha1"], p["beta1"]), jacobi_sym(p["alpha2"], p["beta2"]),
                                RhoFunction.one(), "tensor"),
    S=(("1", "0"), ("0", "1")),
    formulas=(EigenFormula("-(n-m)(n-m+alpha1+beta1+1)-m(m+alpha2+beta2+1)", _tensor_jacobi),),
)

TENSOR_LAGUERRE = Family(
    name="tensor_laguerre",
    title="Tensor product of Laguerre weights (rho = 1)",
    defaults=(("alpha", F(1)), ("beta", F(1, 2))),
    build=lambda p: make_system(laguerre(p["alpha"]), laguerre(p["beta"]), RhoFunction.one(), "tensor_laguerre"),
    S=(("1", "0"), ("0", "1")),
    formulas=(EigenFormula("-n", _diag(lambda n, m, p: F(-n))),),
)

FAMILIES: Dict[str, Family] = {f.name: f for f in (BALL, BIANGLE, TRIANGLE, LAGUERRE_JACOBI,
                                                   LAGUERRE_LAGUERRE, TENSOR, TENSOR_LAGUERRE)}
EXAMPLE_FAMILIES = ("ball", "biangle", "triangle", "laguerre_jacobi", "laguerre_laguerre")


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise FamilyError(f"unknown family {name!r}; registered: {', '.join(FAMILIES)}") from None
