from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings

from kpearson.algebra import BivariatePoly
from kpearson.expr import parse_poly
from kpearson.families import operator_pair
from kpearson.koornwinder import basis
from kpearson.pearson import PearsonPair
from kpearson.quadrature import (QuadratureError, gauss_rule, inner_product, moment_errors, moment_matrix_check,
                                 orthocheck)
from kpearson.weights import jacobi01, jacobi_sym, laguerre

from conftest import bivariate_polys, exponents, family_system, small_fractions

F = Fraction
TINY = mpmath.mpf(10) ** -29


def test_one_point_rules():
    r = gauss_rule(jacobi_sym(0, 0), 1)
    assert abs(r.nodes[0]) < TINY and abs(r.weights[0] - 2) < TINY
    r = gauss_rule(laguerre(0), 1)
    assert abs(r.nodes[0] - 1) < TINY and abs(r.weights[0] - 1) < TINY


@settings(max_examples=10)
@given(exponents, exponents)
def test_rules_are_valid_and_exact(a, b):
    for w in (jacobi_sym(a, b), jacobi01(a, b), laguerre(a)):
        r = gauss_rule(w, 5)
        assert all(x < y for x, y in zip(r.nodes, r.nodes[1:]))
        lo, hi = (float(e) for e in w.interval)
        assert all(lo < x < hi for x in r.nodes)
        assert all(wt > 0 for wt in r.weights)
        assert max(moment_errors(w, 5)) < mpmath.mpf(10) ** -26


def test_rule_rejects_bad_arguments():
    with pytest.raises(QuadratureError):
        gauss_rule(jacobi_sym(0, 0), 0)
    with pytest.raises(QuadratureError):
        gauss_rule(jacobi_sym(0, 0), 3, prec=10)


def test_areas():
    one = BivariatePoly.const(1)
    _, _, ball = family_system("ball", alpha=0)
    assert abs(inner_product(ball, one, one) - mpmath.pi) < mpmath.mpf(10) ** -29
    _, _, tri = family_system("triangle", alpha=0, beta=0, gamma=0)
    assert abs(inner_product(tri, one, one) - mpmath.mpf(1) / 2) < mpmath.mpf(10) ** -29
    _, _, ball1 = family_system("ball", alpha=1)
    assert abs(inner_product(ball1, parse_poly("x"), parse_poly("y"))) < TINY


@settings(max_examples=15)
@given(bivariate_polys(max_deg=3), bivariate_polys(max_deg=3), bivariate_polys(max_deg=3), small_fractions)
def test_inner_product_symmetric_and_linear(p, q, r, a):
    _, _, sys = family_system("laguerre_jacobi")
    ip = lambda u, v: inner_product(sys, u, v)
    scale = 1 + abs(ip(p, p)) + abs(ip(q, q)) + abs(ip(r, r))
    assert abs(ip(p, q) - ip(q, p)) <= TINY * scale
    assert abs(ip(p * a + r, q) - (a * ip(p, q) + ip(r, q))) <= TINY * scale * (1 + abs(a))


@pytest.mark.parametrize("name", ["ball", "biangle", "triangle", "laguerre_jacobi", "laguerre_laguerre", "tensor"])
def test_orthocheck_passes(name):
    _, _, sys = family_system(name)
    rep = orthocheck(sys, 5)
    assert rep.passed, rep.to_json()


def test_orthocheck_detects_corruption():
    _, _, sys = family_system("ball", alpha=1)
    polys = basis(sys, 4)
    polys[(2, 1)] = polys[(2, 1)] + parse_poly("x")
    rep = orthocheck(sys, 4, polys=polys)
    assert not rep.passed and (2, 1) in rep.worst_pair


def test_moment_matrix():
    for name in ("ball", "tensor"):
        fam, p, sys = family_system(name)
        assert moment_matrix_check(operator_pair(fam, p, sys), sys).passed
    _, _, ball = family_system("ball")
    odd = PearsonPair(parse_poly("y"), BivariatePoly(), parse_poly("-y"), parse_poly("x"), parse_poly("y"))
    assert not moment_matrix_check(odd, ball).passed
