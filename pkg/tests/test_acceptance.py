"""Acceptance criteria, one test per criterion, each recording a PASS/FAIL line.

Criteria 2, 4 and 5 assert the displayed formulas literally and fail; the
reasons are kept in the decisions ledger and the corrected forms are pinned
in test_operators.py and below.
"""
import time
from fractions import Fraction

import mpmath

from kpearson.expr import parse_poly
from kpearson.families import (EXAMPLE_FAMILIES, decomposition_inputs, operator_pair,
                               printed_pair_polys)
from kpearson.operators import build_operator, classify
from kpearson.pearson import (PearsonPair, Symmetrizer, raw_system, search_symmetrizer, symmetrize_with,
                              verify_divergence_form, verify_gradient_form)
from kpearson.quadrature import moment_errors, orthocheck
from kpearson.weights import jacobi01, jacobi_sym, laguerre

from conftest import family_system

F = Fraction


def _classify(name, params, nmax):
    fam, p, sys = family_system(name, **params)
    L = build_operator(operator_pair(fam, p, sys))
    return p, sys, classify(sys, L, nmax)


def test_criterion_1_ball_krall_sheffer(record_criterion):
    failures, slowest = [], 0.0
    for a in (F(1), F(3, 2), F(7, 3)):
        t0 = time.perf_counter()
        _, _, c = _classify("ball", {"alpha": a}, 8)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if c.kind != "krall_sheffer" or dt > 60:
            failures.append(f"alpha={a}: {c.kind}, {dt:.1f}s")
        for r in c.reports:
            n = r.index[0]
            if r.classification != "eigenfunction" or r.eigenvalue != -n * (n + 2 * a + 2):
                failures.append(f"alpha={a} {r.index}")
    record_criterion(1, not failures, f"slowest {slowest:.2f}s" + (f"; {failures[:3]}" if failures else ""))
    assert not failures


def _biangle_printed(n, m, a, b):
    return -((n - m) * (2 * n + 2 * a + 2 * b + 5) + F(1, 2) * m * (m + 2 * a + 2 * b + 3))


def test_criterion_2_biangle_eigenvalues(record_criterion):
    bad = []
    for a, b in ((F(1), F(1)), (F(1, 2), F(2)), (F(3), F(1, 3))):
        _, _, c = _classify("biangle", {"alpha": a, "beta": b}, 8)
        for r in c.reports:
            if r.eigenvalue != _biangle_printed(*r.index, a, b):
                bad.append(((a, b), r.index, r.eigenvalue))
    detail = "printed -[(n-m)(2n+2a+2b+5)+m(m+2a+2b+3)/2]"
    if bad:
        (ab, idx, got), = bad[:1]
        detail += f"; {len(bad)} mismatches, first {idx} at (a,b)={tuple(map(str, ab))}: " \
                  f"got {got}, printed {_biangle_printed(*idx, *ab)}"
    record_criterion(2, not bad, detail)
    assert not bad


def test_criterion_2_companion_corrected_formula():
    # same operator, 2n+2a+2b+3 in place of +5: holds for every (n, m)
    for a, b in ((F(1), F(1)), (F(1, 2), F(2)), (F(3), F(1, 3))):
        _, _, c = _classify("biangle", {"alpha": a, "beta": b}, 8)
        assert c.kind == "classical" and c.all_eigenfunctions
        for r in c.reports:
            n, m = r.index
            assert r.eigenvalue == -((n - m) * (2 * n + 2 * a + 2 * b + 3) + F(1, 2) * m * (m + 2 * a + 2 * b + 3))


def test_criterion_3_triangle(record_criterion):
    bad = []
    for a, b, g in ((F(1, 2), F(1, 3), F(2)), (F(0), F(0), F(0)), (F(-1, 2), F(3, 4), F(1, 5))):
        _, _, c = _classify("triangle", {"alpha": a, "beta": b, "gamma": g}, 8)
        if c.kind != "krall_sheffer":
            bad.append(((a, b, g), c.kind))
        for r in c.reports:
            n = r.index[0]
            if r.eigenvalue != -n * (n + a + b + g + 2):
                bad.append(((a, b, g), r.index))
    record_criterion(3, not bad, f"{bad[:3]}" if bad else "krall_sheffer, -n(n+a+b+g+2) exact")
    assert not bad


def _lj_expected(n, m, b):
    out = {(n, m): -n - m * (m + b)}
    if m >= 1:
        out[(n, m - 1)] = -(m - 1) * (b + 1)
    if m >= 2:
        out[(n, m - 2)] = F(m * (m - 1))
    return {k: v for k, v in out.items() if v}


def test_criterion_4_laguerre_jacobi_band(record_criterion):
    bad, kinds = [], set()
    for a, b in ((F(1), F(1)), (F(2), F(1, 2))):
        _, _, c = _classify("laguerre_jacobi", {"alpha": a, "beta": b}, 6)
        kinds.add(c.kind)
        for r in c.reports:
            got = {k: v for k, v in r.coefficients.items() if v}
            if got != _lj_expected(*r.index, b):
                bad.append(((a, b), r.index, {f"{k}": str(v) for k, v in got.items()}))
    ok = not bad and kinds == {"classical"}
    first = bad[0] if bad else None
    record_criterion(4, ok, f"classification {sorted(kinds)}; {len(bad)} (n,m) with extra or wrong terms"
                            + (f", first {first[1]} -> {first[2]}" if first else ""))
    assert ok


def _ll_expected(n, m, a, b):
    return {(n + 1, m): F(-(n - m)), (n, m + 1): F(n - m + m * (m - 1)),
            (n, m): (n - m) * (n - m + a + b) - m, (n, m - 1): (m - 1) * (b + 2)}


def test_criterion_5_laguerre_laguerre(record_criterion):
    coeff_bad, has_up, deg_ok = [], True, True
    for a, b in ((F(2), F(1, 2)), (F(3), F(1))):
        fam, p, sys = family_system("laguerre_laguerre", alpha=a, beta=b)
        P = operator_pair(fam, p, sys)
        deg_ok &= (P.deg_phi, P.deg_psi) == (2, 2)
        c = classify(sys, build_operator(P), 6)
        has_up &= any(k[0] == r.index[0] + 1 and v for r in c.reports for k, v in r.coefficients.items())
        for r in c.reports:
            n, m = r.index
            exp = {k: v for k, v in _ll_expected(n, m, a, b).items() if v and 0 <= k[1] <= k[0]}
            got = {k: v for k, v in r.coefficients.items() if v}
            if got != exp:
                coeff_bad.append(((a, b), r.index))
    ok = not coeff_bad and has_up and deg_ok
    record_criterion(5, ok, f"degree n+1 term present: {has_up}; deg Phi = deg Psi = 2: {deg_ok}; "
                            f"four-coefficient match fails at {len(coeff_bad)} (n,m)")
    assert ok


def test_criterion_6_pearson_verification(record_criterion):
    outcomes = {}
    for name in EXAMPLE_FAMILIES:
        fam, p, sys = family_system(name)
        Phi, psit = printed_pair_polys(fam.final_pair, p)
        outcomes[name] = verify_divergence_form(PearsonPair.from_gradient_form(Phi, psit), sys).passed
    fam, p, sys = family_system("laguerre_laguerre")
    M, _ = printed_pair_polys(fam.raw, p)
    printed = verify_gradient_form(M, (parse_poly("alpha - x", p), parse_poly("(beta+1)*x - y", p)), sys)
    fixed = verify_gradient_form(M, (parse_poly("alpha - x", p), parse_poly("beta*x - y", p)), sys)
    ok = all(outcomes.values()) and not printed.passed and fixed.passed
    record_criterion(6, ok, f"final pairs {outcomes}; (beta+1)x-y residual "
                            f"{[str(r) for r in printed.residual]}; beta*x-y passes: {fixed.passed}")
    assert all(outcomes.values())
    assert not printed.passed and any(not r.is_zero() for r in printed.residual)
    assert fixed.passed


def test_criterion_7_symmetrizer_search(record_criterion):
    detail, ok = [], True
    for name in ("ball", "triangle"):
        fam, p, sys = family_system(name)
        target = printed_pair_polys(fam.final_pair, p)[0]
        t0 = time.perf_counter()
        cands = search_symmetrizer(raw_system(sys), sys, deg_bound=1)
        dt = time.perf_counter() - t0
        hit = None
        for i, cand in enumerate(cands):
            r = _positive_ratio(cand.pair.Phi, target)
            if r is not None:
                hit = (i, r)
                break
        ok &= hit is not None and dt <= 120
        detail.append(f"{name}: rank {hit[0] if hit else None} of {len(cands)}, scale {hit[1] if hit else '-'}, "
                      f"{dt:.1f}s")
    record_criterion(7, ok, "; ".join(detail))
    assert ok


def _positive_ratio(A, B):
    ratio = None
    for ra, rb in zip(A, B):
        for a, b in zip(ra, rb):
            if a.is_zero() != b.is_zero():
                return None
            if b.is_zero():
                continue
            r = a.leading_coeff / b.leading_coeff
            if a != b * r or (ratio is not None and r != ratio):
                return None
            ratio = r
    return ratio if ratio is not None and ratio > 0 else None


PARAMETER_SETS = {
    "ball": [{"alpha": F(1)}, {"alpha": F(3, 2)}, {"alpha": F(7, 3)}],
    "biangle": [{"alpha": F(1), "beta": F(1)}, {"alpha": F(1, 2), "beta": F(2)}, {"alpha": F(3), "beta": F(1, 3)}],
    "triangle": [{"alpha": F(1, 2), "beta": F(1, 3), "gamma": F(2)}, {"alpha": F(0), "beta": F(0), "gamma": F(0)},
                 {"alpha": F(-1, 2), "beta": F(3, 4), "gamma": F(1, 5)}],
    "laguerre_jacobi": [{"alpha": F(1), "beta": F(1)}, {"alpha": F(2), "beta": F(1, 2)}],
    "laguerre_laguerre": [{"alpha": F(2), "beta": F(1, 2)}, {"alpha": F(3), "beta": F(1)}],
}


def test_criterion_8_decomposition_identity(record_criterion):
    checked, bad = 0, []
    for name, sets in PARAMETER_SETS.items():
        for params in sets:
            fam, p, sys = family_system(name, **params)
            for aux, inp in decomposition_inputs(fam, p, sys, registered_only=True):
                checked += 1
                if not inp.identity_holds():
                    bad.append((name, aux.label, params))
    record_criterion(8, not bad and checked > 0, f"{checked} registered inputs, (ac-b^2)E = 1 "
                                                 f"{'fails for ' + str(bad) if bad else 'exactly'}")
    assert checked > 0 and not bad


def test_criterion_9_orthogonality(record_criterion):
    worst, bad = {}, []
    for name in EXAMPLE_FAMILIES:
        _, _, sys = family_system(name)
        rep = orthocheck(sys, 6, prec=34, tol=1e-10)
        worst[name] = mpmath.nstr(rep.max_residual, 2) if rep.max_residual is not None else rep.failure
        if not rep.passed:
            bad.append(name)
    record_criterion(9, not bad, f"max residual {worst}")
    assert not bad


def test_criterion_10_gauss_exactness(record_criterion):
    weights = [jacobi_sym(0, 0), jacobi_sym(F(1, 2), F(-1, 3)), jacobi_sym(F(7, 3), F(7, 3)),
               jacobi01(F(1, 2), F(7, 3)), jacobi01(2, F(-1, 2)), laguerre(0), laguerre(F(1, 2)), laguerre(F(5, 2))]
    worst = mpmath.mpf(0)
    for w in weights:
        for n in range(1, 11):
            worst = max(worst, max(moment_errors(w, n, prec=34)))
    ok = worst <= mpmath.mpf(10) ** -26
    record_criterion(10, ok, f"{len(weights)} weights, n <= 10, worst relative error {mpmath.nstr(worst, 3)}")
    assert ok


def test_criterion_11_tensor(record_criterion):
    fam, p, sys = family_system("tensor")
    raw = raw_system(sys)
    diagonal = raw.phi_mat[0][1].is_zero() and raw.phi_mat[1][0].is_zero()
    ident = Symmetrizer.of(1, 0, 0, 1)
    P = symmetrize_with(ident, raw, sys)
    first = search_symmetrizer(raw, sys)[0].S
    c = classify(sys, build_operator(P), 6)
    ok = diagonal and first == ident and c.kind in ("classical", "krall_sheffer") and P.s_value == 0
    record_criterion(11, ok, f"diagonal raw phi {diagonal}; search ranks identity first {first == ident}; "
                             f"{c.kind}; s_value {P.s_value}")
    assert ok
