from fractions import Fraction

import pytest
from hypothesis import given, settings

from kpearson.algebra import RationalFunction2
from kpearson.expr import parse_poly, parse_rf
from kpearson.families import (EXAMPLE_FAMILIES, decomposition_inputs, printed_pair_polys,
                               printed_symmetrizer)
from kpearson.pearson import (DecompositionInput, PearsonError, PearsonPair, Symmetrizer, decomposition_method,
                              pair_from_matrix, raw_system, search_symmetrizer, symmetrize_with,
                              verify_divergence_form, verify_gradient_form)

from conftest import exponents, family_system

F = Fraction


@pytest.mark.parametrize("name", EXAMPLE_FAMILIES + ("tensor",))
def test_raw_system_satisfies_gradient_form(name):
    _, _, sys = family_system(name)
    raw = raw_system(sys)
    assert verify_gradient_form(raw.phi_mat, raw.delta, sys).passed
    assert raw.phi_mat[1][0].is_zero()


@pytest.mark.parametrize("name", ["ball", "biangle", "triangle", "laguerre_jacobi"])
def test_printed_raw_systems_pass(name):
    fam, p, sys = family_system(name)
    M, v = printed_pair_polys(fam.raw, p)
    assert verify_gradient_form(M, v, sys).passed


def test_raw_second_row_uses_example_scaling():
    _, _, sys = family_system("ball")
    assert raw_system(sys).display_discrepancy
    _, _, sys = family_system("tensor")
    assert not raw_system(sys).display_discrepancy


@settings(max_examples=8)
@given(exponents)
def test_ball_printed_symmetrizer_gives_symmetric_pair(a):
    fam, p, sys = family_system("ball", alpha=a)
    P = symmetrize_with(printed_symmetrizer(fam.S, p), raw_system(sys), sys)
    assert P.Phi == ((parse_poly("1-x^2"), parse_poly("-x*y")), (parse_poly("-x*y"), parse_poly("1-y^2")))
    assert P.psi_tilde == (parse_poly("-2*x") * a, parse_poly("-2*y") * a)
    assert P.verified and P.s_value == 0


def test_biangle_printed_symmetrizer_sign():
    fam, p, sys = family_system("biangle")
    with pytest.raises(PearsonError, match="non-polynomial"):
        symmetrize_with(printed_symmetrizer(fam.S, p), raw_system(sys), sys)
    P = symmetrize_with(printed_symmetrizer(fam.S_corrected, p), raw_system(sys), sys)
    assert P.phi22 == parse_poly("1/4*(1-y^2)")


def test_symmetrizer_constraint_checked():
    _, _, sys = family_system("ball")
    with pytest.raises(PearsonError, match="violates"):
        symmetrize_with(Symmetrizer.of(1, 0, 1, 1), raw_system(sys), sys)
    with pytest.raises(PearsonError, match="singular"):
        symmetrize_with(Symmetrizer.of(1, 0, 0, 0), raw_system(sys), sys)


@pytest.mark.parametrize("name", EXAMPLE_FAMILIES)
def test_final_printed_pairs_verify(name):
    fam, p, sys = family_system(name)
    Phi, psit = printed_pair_polys(fam.final_pair, p)
    assert verify_divergence_form(PearsonPair.from_gradient_form(Phi, psit), sys).passed


def test_laguerre_laguerre_printed_diagonal_pair_fails():
    fam, p, sys = family_system("laguerre_laguerre")
    pp = next(x for x in fam.pairs if x.label == "diagonal pair")
    v = verify_divergence_form(PearsonPair.from_gradient_form(*printed_pair_polys(pp, p)), sys)
    assert not v.passed
    assert v.residual == (parse_rf("-x"), parse_rf("x"))


def test_pair_from_matrix_and_scaling():
    _, _, sys = family_system("ball", alpha=2)
    P = pair_from_matrix([[parse_poly("1-x^2-y^2"), parse_poly("0")], [parse_poly("0"), parse_poly("1-x^2-y^2")]],
                         sys)
    assert P.psi_tilde == (parse_poly("-4*x"), parse_poly("-4*y"))
    Q = P.scaled(F(3, 2))
    assert Q.proportional_to(P) == F(3, 2)
    assert P.scaled(-1).proportional_to(P) is None
    with pytest.raises(PearsonError):
        pair_from_matrix([[parse_poly("1"), parse_poly("0")], [parse_poly("0"), parse_poly("1")]], sys)


def test_pair_needs_nonconstant_psi():
    with pytest.raises(PearsonError, match="deg Psi"):
        PearsonPair(parse_poly("1"), parse_poly("0"), parse_poly("1"), parse_poly("1"), parse_poly("0"))


@pytest.mark.parametrize("name", EXAMPLE_FAMILIES)
def test_registered_decompositions(name):
    fam, p, sys = family_system(name)
    for aux, inp in decomposition_inputs(fam, p, sys, registered_only=True):
        assert inp.identity_holds()
        assert inp.nonvanishing_inside(sys)
        assert decomposition_method(inp, sys).verified


def test_unregistered_decompositions_violate_identity():
    for name in ("ball", "laguerre_jacobi"):
        fam, p, sys = family_system(name)
        for aux, inp in decomposition_inputs(fam, p, sys):
            if aux.registered:
                continue
            assert not inp.identity_holds()
            with pytest.raises(PearsonError, match="identity"):
                decomposition_method(inp, sys)
            assert decomposition_method(inp, sys, require_identity=False).verified


def test_decomposition_from_factor_split():
    # triangle: E = (x-y)(1-x)y and x - y = x(1-y) - (1-x)y
    fam, p, sys = family_system("triangle")
    inp = DecompositionInput.build(sys, *(parse_poly(t) for t in ("x-y", "1-x", "y", "x", "1", "1-y")))
    assert inp.identity_holds()
    printed = fam.aux[0]
    assert (inp.a, inp.b, inp.c) == tuple(parse_rf(t) for t in (printed.a, printed.b, printed.c))
    P = decomposition_method(inp, sys)
    assert P.Phi[0][0] == parse_poly("(1-x)*x")


def test_factor_split_rejects_bad_identity():
    _, _, sys = family_system("triangle")
    with pytest.raises(PearsonError, match="factor split"):
        DecompositionInput.build(sys, 2, 1, 1, 1, 1, 1)


@pytest.mark.parametrize("name", ["ball", "triangle"])
def test_search_finds_printed_pair_first(name):
    fam, p, sys = family_system(name)
    cands = search_symmetrizer(raw_system(sys), sys)
    Phi, psit = printed_pair_polys(fam.final_pair, p)
    target = PearsonPair.from_gradient_form(Phi, psit)
    assert cands[0].pair.proportional_to(target) is not None


def test_search_tensor_identity_first():
    _, _, sys = family_system("tensor")
    cands = search_symmetrizer(raw_system(sys), sys)
    S = cands[0].S
    assert (S.A, S.B, S.C, S.D) == tuple(RationalFunction2(v) for v in (1, 0, 0, 1))
