from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings

from kpearson.algebra import BivariatePoly
from kpearson.expr import parse_poly
from kpearson.families import operator_pair, printed_operator
from kpearson.koornwinder import basis, build_polynomial
from kpearson.operators import OperatorError, apply, build_operator, classify, expand_in_basis

from conftest import bivariate_polys, exponents, family_system, small_fractions

F = Fraction


def ball_operator(alpha):
    fam, p, sys = family_system("ball", alpha=alpha)
    return sys, build_operator(operator_pair(fam, p, sys))


def test_printed_operators_reproduced():
    for name in ("ball", "biangle", "triangle", "laguerre_jacobi"):
        fam, p, sys = family_system(name)
        assert build_operator(operator_pair(fam, p, sys)) == printed_operator(fam, p)


def test_laguerre_laguerre_printed_operator_differs():
    fam, p, sys = family_system("laguerre_laguerre")
    L = build_operator(operator_pair(fam, p, sys))
    printed = printed_operator(fam, p)
    assert (L.c_xx, L.c_yy, L.c_xy) == (printed.c_xx, printed.c_yy, printed.c_xy)
    assert L.c_x - printed.c_x == parse_poly("x") and printed.c_y - L.c_y == parse_poly("x")


def test_unverified_pair_rejected():
    fam, p, sys = family_system("ball")
    P = replace(operator_pair(fam, p, sys), verified=False)
    with pytest.raises(OperatorError, match="verified"):
        build_operator(P)


@settings(max_examples=10)
@given(exponents)
def test_ball_apply_examples(a):
    sys, L = ball_operator(a)
    assert apply(L, BivariatePoly.const(1)).is_zero()
    assert apply(L, parse_poly("x")) == parse_poly("x") * (-(2 * a + 3))
    P22 = build_polynomial(sys, 2, 2)
    assert apply(L, P22) == P22 * (-2 * (2 * a + 4))
    assert expand_in_basis(sys, apply(L, build_polynomial(sys, 3, 1)), 3) == {(3, 1): -3 * (2 * a + 5)}


@given(bivariate_polys(max_deg=3), bivariate_polys(max_deg=3), small_fractions, small_fractions)
def test_apply_is_linear(p, q, a, b):
    _, L = ball_operator(F(1, 2))
    assert apply(L, p * a + q * b) == apply(L, p) * a + apply(L, q) * b


@given(bivariate_polys(max_deg=4, max_terms=6))
def test_expansion_reconstructs(q):
    _, _, sys = family_system("triangle")
    coeffs = expand_in_basis(sys, q, 4)
    total = BivariatePoly()
    for (n, m), c in coeffs.items():
        total = total + build_polynomial(sys, n, m) * c
    assert total == q


def test_expansion_trivial_cases():
    _, _, sys = family_system("biangle")
    for (n, m), P in basis(sys, 3).items():
        assert expand_in_basis(sys, P, 3) == {(n, m): 1}
    assert expand_in_basis(sys, BivariatePoly(), 3) == {}
    with pytest.raises(OperatorError):
        expand_in_basis(sys, parse_poly("x^4"), 3)


@pytest.mark.parametrize("name,kind", [("ball", "krall_sheffer"), ("triangle", "krall_sheffer"),
                                       ("biangle", "classical"), ("tensor", "classical"),
                                       ("tensor_laguerre", "krall_sheffer"), ("laguerre_laguerre", "semiclassical")])
def test_classification_kinds(name, kind):
    fam, p, sys = family_system(name)
    c = classify(sys, build_operator(operator_pair(fam, p, sys)), 4, [f.bind(p) for f in fam.formulas])
    assert c.kind == kind
    if kind != "semiclassical":
        assert c.empirical_s == 0 and c.formula != "empirical"


def test_classical_families_preserve_degree():
    for name in ("ball", "biangle", "triangle", "tensor"):
        fam, p, sys = family_system(name)
        c = classify(sys, build_operator(operator_pair(fam, p, sys)), 8)
        assert all(k[0] == r.index[0] for r in c.reports for k in r.coefficients)


@pytest.mark.parametrize("params", [dict(alpha=1, beta=1), dict(alpha=F(1, 2), beta=2), dict(alpha=3, beta=F(1, 3))])
def test_biangle_corrected_eigenvalues(params):
    fam, p, sys = family_system("biangle", **params)
    c = classify(sys, build_operator(operator_pair(fam, p, sys)), 6, [fam.formulas[1].bind(p)])
    assert c.formula == fam.formulas[1].name


def test_classify_needs_nmax_two():
    sys, L = ball_operator(1)
    with pytest.raises(OperatorError):
        classify(sys, L, 1)
