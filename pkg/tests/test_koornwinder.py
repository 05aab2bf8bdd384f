from fractions import Fraction

import pytest
from hypothesis import given, settings

from kpearson.algebra import UniPoly
from kpearson.expr import parse_poly, parse_rf
from kpearson.koornwinder import (KoornwinderError, RhoFunction, basis, build_polynomial, factored_weight,
                                  grad_log_weight, lift, make_system)
from kpearson.weights import jacobi01, jacobi_sym, laguerre, monic_poly

from conftest import exponents, family_system

F = Fraction
c = F(2, 7)


def test_lift_examples():
    assert lift(UniPoly([0, 1]), RhoFunction.sqrt(-1, 0, 1), 1) == parse_poly("y")
    assert lift(UniPoly([-c, 0, 1]), RhoFunction.sqrt(-1, 0, 1), 2) == parse_poly("y^2 - 2/7*(1-x^2)")
    assert lift(UniPoly([-c, 1]), RhoFunction.linear(1, 0), 1) == parse_poly("y - 2/7*x")
    with pytest.raises(KoornwinderError, match="non-polynomial lift"):
        lift(UniPoly([1, 1]), RhoFunction.sqrt(-1, 0, 1), 1)


def test_small_polynomials():
    _, _, ball = family_system("ball", alpha=1)
    assert build_polynomial(ball, 0, 0) == parse_poly("1")
    assert build_polynomial(ball, 1, 0) == parse_poly("x")
    assert build_polynomial(ball, 1, 1) == parse_poly("y")
    _, p, tri = family_system("triangle", alpha=F(1, 2), beta=F(1, 3), gamma=2)
    b, g = p["beta"], p["gamma"]
    assert build_polynomial(tri, 1, 1) == parse_poly("y") - parse_poly("x") * ((g + 1) / (b + g + 2))


@pytest.mark.parametrize("name", ["ball", "biangle", "triangle", "laguerre_jacobi", "laguerre_laguerre"])
def test_basis_is_unitriangular(name):
    _, _, sys = family_system(name)
    N = 8 if name in ("ball", "triangle") else 6
    P = basis(sys, N)
    leads = set()
    for (n, m), poly in P.items():
        assert poly.leading_monomial == (n - m, m)
        assert poly.leading_coeff == 1
        assert poly.degree == n and poly.degree_in("y") == m
        leads.add(poly.leading_monomial)
    assert len(leads) == (N + 1) * (N + 2) // 2


@settings(max_examples=10)
@given(exponents, exponents, exponents, exponents)
def test_tensor_reduction(a1, b1, a2, b2):
    w1, w2 = jacobi_sym(a1, b1), jacobi_sym(a2, b2)
    sys = make_system(w1, w2, RhoFunction.one())
    for n in range(4):
        for m in range(n + 1):
            assert build_polynomial(sys, n, m) == \
                monic_poly(w1, n - m).to_bivariate("x") * monic_poly(w2, m).to_bivariate("y")


def test_domains():
    _, _, ball = family_system("ball")
    assert parse_poly("1-x^2-y^2") in ball.domain.boundary_polynomials
    _, _, tri = family_system("triangle")
    assert set(tri.domain.boundary_polynomials) == {parse_poly("1-x"), parse_poly("x-y"), parse_poly("y")}
    _, _, ten = family_system("tensor")
    assert ten.domain.x_range == (-1, 1) and ten.domain.y_bounds == (-1, 1)


def test_factored_weights():
    _, _, ball = family_system("ball", alpha=F(3, 2))
    fw = factored_weight(ball)
    assert fw.factors == ((parse_poly("1-x^2-y^2"), F(3, 2)),)
    _, _, tri = family_system("triangle", alpha=F(1, 2), beta=F(1, 3), gamma=2)
    assert set(factored_weight(tri).factors) == {(parse_poly("1-x"), F(1, 2)), (parse_poly("x-y"), F(1, 3)),
                                                 (parse_poly("y"), F(2))}
    _, _, ll = family_system("laguerre_laguerre", alpha=2, beta=F(1, 2))
    fw = factored_weight(ll)
    assert set(fw.factors) == {(parse_poly("x"), F(3, 2)), (parse_poly("y"), F(1, 2))}
    assert fw.exp_argument == parse_rf("-(x + y/x)")


def test_grad_log_weight():
    _, _, ball = family_system("ball", alpha=F(5, 3))
    gx, gy = grad_log_weight(ball)
    assert gx == parse_rf("-2*5/3*x/(1-x^2-y^2)") and gy == parse_rf("-2*5/3*y/(1-x^2-y^2)")
    _, _, tl = family_system("tensor_laguerre", alpha=F(1, 2), beta=3)
    assert grad_log_weight(tl) == (parse_rf("1/2/x - 1"), parse_rf("3/y - 1"))
    _, _, ll = family_system("laguerre_laguerre", alpha=3, beta=1)
    assert grad_log_weight(ll)[0] == parse_rf("2/x - 1 + y/x^2")


def test_case_two_validation():
    with pytest.raises(KoornwinderError, match="even w2"):
        make_system(jacobi_sym(1, 1), jacobi_sym(1, 2), RhoFunction.sqrt(-1, 0, 1))
    with pytest.raises(KoornwinderError, match="symmetric interval"):
        make_system(jacobi_sym(1, 1), jacobi01(1, 1), RhoFunction.sqrt(-1, 0, 1))
    with pytest.raises(KoornwinderError):
        make_system(laguerre(1), laguerre(1), RhoFunction.linear(1, -1))   # rho changes sign on (0, inf)
