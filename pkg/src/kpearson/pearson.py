"""Matrix Pearson equations for Koornwinder weights.

Gradient form:    Phi grad(w) = Psi_tilde w
Divergence form:  div(Phi w)  = Psi^t w,  Psi = Psi_tilde + (div Phi)^t

The raw system is the upper-triangular first-order system obtained from the
univariate Pearson data; it is symmetrized either by left multiplication with a
rational matrix S or through auxiliary functions a, b, c with ac - b^2 = 1/E.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .algebra import (BivariatePoly, RationalFunction2, UniPoly, Y, divergence,
                      mat_det, mat_is_symmetric, mat_mul, mat_vec)
from .koornwinder import KoornwinderSystem, RhoFunction, grad_log_weight
from .linalg import nullspace
from .weights import pearson_tilde, sample_points

RF = RationalFunction2
PROVENANCES = ("raw+symmetrizer", "decomposition", "manual")


class PearsonError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    passed: bool
    residual: Tuple[RationalFunction2, ...]
    pair: Optional["PearsonPair"] = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "residual": [str(r) for r in self.residual]}


# ---------------------------------------------------------------------------
# raw system
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RawSystem:
    phi_mat: Tuple[Tuple[BivariatePoly, BivariatePoly], Tuple[BivariatePoly, BivariatePoly]]
    delta: Tuple[BivariatePoly, BivariatePoly]
    row_scaling: Tuple[int, int]

    @property
    def display_discrepancy(self) -> bool:
        """Row 2 differs from rho*phi2(y/rho), psi2~(y/rho) by a rho factor."""
        return self.row_scaling[1] != 0

    def to_json(self) -> dict:
        return {
            "phi": [[str(e) for e in row] for row in self.phi_mat],
            "delta": [str(e) for e in self.delta],
            "row_scaling": list(self.row_scaling),
        }


def _rho_terms(q: UniPoly, shift: int, rho: RhoFunction) -> Optional[BivariatePoly]:
    """sum_j q_j y^j rho^{shift - j}, or None when that is not a polynomial."""
    out = BivariatePoly()
    for j, c in enumerate(q.coeffs):
        if not c:
            continue
        e = shift - j
        if rho.is_constant and rho.case == "I":
            piece = rho.linear_form.to_bivariate() ** e if e >= 0 else \
                BivariatePoly.const(1 / rho.linear_form.lc ** (-e))
        elif e < 0 or (rho.case == "II" and e % 2):
            return None
        else:
            piece = rho.power(e).to_bivariate()
        out = out + piece * BivariatePoly.monomial(0, j, c)
    return out


def _scaled_row1(phi1: UniPoly, psit1: UniPoly, rho: RhoFunction, k: int):
    g = rho.power(k).to_bivariate()
    p1 = phi1.to_bivariate()
    if rho.rho_sq.degree <= 0:
        eta = RF(0)
    else:
        eta = RF(p1 * rho.rho_sq.derivative().to_bivariate() * Fraction(1, 2), rho.rho_sq.to_bivariate())
    entries = [RF(p1 * g), eta * (Y * g), RF(psit1.to_bivariate() * g)]
    if all(e.is_polynomial() for e in entries):
        return [e.as_polynomial() for e in entries]
    return None


@lru_cache(maxsize=None)
def raw_system(sys: KoornwinderSystem) -> RawSystem:
    rho = sys.rho
    d1 = pearson_tilde(sys.w1)
    d2 = pearson_tilde(sys.w2)
    step = 2 if rho.case == "II" else 1
    row1 = None
    for k1 in range(0, 6, step):
        row1 = _scaled_row1(d1.phi, d1.psi_tilde, rho, k1)
        if row1 is not None:
            break
    if row1 is None:
        raise PearsonError("eta = phi1 rho'/rho cannot be cleared by a power of rho: "
                           "rho does not divide phi1, so the modified weights u_m have higher class")
    # row 2 is rho phi2(y/rho) d_y ln w = psi2~(y/rho); multiply by rho^k2
    row2 = None
    for k2 in range(0, max(d2.phi.degree, d2.psi_tilde.degree) + 3):
        phi3 = _rho_terms(d2.phi, k2 + 1, rho)
        delta2 = _rho_terms(d2.psi_tilde, k2, rho)
        if phi3 is not None and delta2 is not None:
            row2 = (phi3, delta2)
            break
    if row2 is None:
        raise PearsonError("second row of the raw system cannot be cleared to polynomials")
    phi = ((row1[0], row1[1]), (BivariatePoly(), row2[0]))
    if mat_det(phi).is_zero():
        raise PearsonError("raw system matrix is singular")
    return RawSystem(phi, (row1[2], row2[1]), (k1, k2))


def verify_gradient_form(M, v, sys: KoornwinderSystem) -> Verdict:
    """Residual v - M grad(ln w), componentwise."""
    g = grad_log_weight(sys)
    Mg = mat_vec(M, g)
    res = tuple(RF.coerce(v[i]) - Mg[i] for i in range(2))
    return Verdict(all(r.is_zero() for r in res), res)


# ---------------------------------------------------------------------------
# Pearson pairs
# ---------------------------------------------------------------------------

def _deg(ps: Sequence[BivariatePoly]) -> int:
    return max((p.degree for p in ps), default=-1)


@dataclass(frozen=True)
class PearsonPair:
    """Symmetric Phi = [[phi11, phi12], [phi12, phi22]] and divergence-form Psi."""

    phi11: BivariatePoly
    phi12: BivariatePoly
    phi22: BivariatePoly
    psi1: BivariatePoly
    psi2: BivariatePoly
    provenance: str = "manual"
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise PearsonError(f"unknown provenance {self.provenance!r}")
        if _deg([self.psi1, self.psi2]) < 1:
            raise PearsonError("Pearson pair needs deg Psi >= 1")

    @classmethod
    def from_gradient_form(cls, Phi, psi_tilde, provenance: str = "manual") -> "PearsonPair":
        Phi = tuple(tuple(BivariatePoly.coerce(e) for e in row) for row in Phi)
        if Phi[0][1] != Phi[1][0]:
            raise PearsonError("Phi is not symmetric")
        div = [divergence(row).as_polynomial() for row in Phi]
        return cls(Phi[0][0], Phi[0][1], Phi[1][1],
                   BivariatePoly.coerce(psi_tilde[0]) + div[0],
                   BivariatePoly.coerce(psi_tilde[1]) + div[1], provenance)

    @property
    def Phi(self):
        return ((self.phi11, self.phi12), (self.phi12, self.phi22))

    @property
    def Psi(self):
        return (self.psi1, self.psi2)

    @property
    def psi_tilde(self) -> Tuple[BivariatePoly, BivariatePoly]:
        """Gradient-form vector Psi - (div Phi)^t."""
        div = [divergence(row).as_polynomial() for row in self.Phi]
        return (self.psi1 - div[0], self.psi2 - div[1])

    @property
    def deg_phi(self) -> int:
        return _deg([self.phi11, self.phi12, self.phi22])

    @property
    def deg_psi(self) -> int:
        return _deg([self.psi1, self.psi2])

    @property
    def s_value(self) -> int:
        return max(self.deg_phi - 2, self.deg_psi - 1)

    def scaled(self, c) -> "PearsonPair":
        return replace(self, phi11=self.phi11 * c, phi12=self.phi12 * c, phi22=self.phi22 * c,
                       psi1=self.psi1 * c, psi2=self.psi2 * c)

    def proportional_to(self, other: "PearsonPair") -> Optional[Fraction]:
        """c > 0 with self = c * other (Phi and Psi), else None."""
        mine = list(self.Phi[0]) + [self.phi22] + list(self.Psi)
        theirs = list(other.Phi[0]) + [other.phi22] + list(other.Psi)
        c = None
        for a, b in zip(mine, theirs):
            if b.is_zero() != a.is_zero():
                return None
            if b.is_zero():
                continue
            r = a.leading_coeff / b.leading_coeff
            if c is None:
                c = r
            if r != c or a != b * c:
                return None
        return c if c is not None and c > 0 else None

    def to_json(self) -> dict:
        return {
            "Phi": [[str(e) for e in row] for row in self.Phi],
            "Psi": [str(e) for e in self.Psi],
            "Psi_tilde": [str(e) for e in self.psi_tilde],
            "deg_Phi": self.deg_phi,
            "deg_Psi": self.deg_psi,
            "s_value": self.s_value,
            "provenance": self.provenance,
            "verified": self.verified,
        }


def verify_divergence_form(P: PearsonPair, sys: KoornwinderSystem) -> Verdict:
    """Residual Psi - (div Phi + Phi grad ln w), same sign convention as the gradient form."""
    gx, gy = grad_log_weight(sys)
    res = []
    for (p1, p2), psi in zip(P.Phi, P.Psi):
        r = psi - divergence((p1, p2)) - gx * p1 - gy * p2
        res.append(r)
    ok = all(r.is_zero() for r in res)
    return Verdict(ok, tuple(res), replace(P, verified=True) if ok else None)


def _verified(P: PearsonPair, sys: KoornwinderSystem) -> PearsonPair:
    v = verify_divergence_form(P, sys)
    if not v.passed:
        raise PearsonError("internal inconsistency: derived pair fails verification "
                           f"(residual {', '.join(map(str, v.residual))})")
    return v.pair


def pair_from_matrix(Phi, sys: KoornwinderSystem, provenance: str = "manual") -> PearsonPair:
    """Complete a symmetric polynomial Phi to a verified pair, Psi~ = Phi grad ln w."""
    v = mat_vec(Phi, grad_log_weight(sys))
    if not all(e.is_polynomial() for e in v):
        raise PearsonError("Phi grad(ln w) is not polynomial; Phi admits no Pearson vector")
    return _verified(PearsonPair.from_gradient_form(Phi, [e.as_polynomial() for e in v], provenance), sys)


# ---------------------------------------------------------------------------
# symmetrization by left multiplication
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Symmetrizer:
    A: RationalFunction2
    B: RationalFunction2
    C: RationalFunction2
    D: RationalFunction2

    @classmethod
    def of(cls, A, B, C, D) -> "Symmetrizer":
        return cls(*(RF.coerce(e) for e in (A, B, C, D)))

    @property
    def matrix(self):
        return ((self.A, self.B), (self.C, self.D))

    def constraint(self, raw: RawSystem) -> RationalFunction2:
        """A phi2 + B phi3 - C phi1 for raw phi = [[phi1, phi2], [0, phi3]]."""
        (f1, f2), (_, f3) = raw.phi_mat
        return self.A * f2 + self.B * f3 - self.C * f1

    def to_json(self) -> dict:
        return {"S": [[str(e) for e in row] for row in self.matrix]}


def symmetrize_with(S: Symmetrizer, raw: RawSystem, sys: KoornwinderSystem) -> PearsonPair:
    if mat_det(S.matrix).is_zero():
        raise PearsonError("symmetrizer is singular")
    if not S.constraint(raw).is_zero():
        raise PearsonError("symmetrizer violates A*phi2 + B*phi3 - C*phi1 = 0")
    Phi = mat_mul(S.matrix, raw.phi_mat)
    psit = mat_vec(S.matrix, raw.delta)
    bad = [f"Phi[{i + 1}][{j + 1}] = {Phi[i][j]}" for i in range(2) for j in range(2)
           if not Phi[i][j].is_polynomial()]
    bad += [f"Psi~[{i + 1}] = {psit[i]}" for i in range(2) if not psit[i].is_polynomial()]
    if bad:
        raise PearsonError("non-polynomial entries: " + "; ".join(bad))
    if not mat_is_symmetric(Phi):
        raise PearsonError("S phi is not symmetric")
    P = PearsonPair.from_gradient_form([[e.as_polynomial() for e in row] for row in Phi],
                                       [e.as_polynomial() for e in psit], "raw+symmetrizer")
    return _verified(P, sys)


def _to_sympy(p: BivariatePoly):
    x, y = sympy.symbols("x y")
    return sum((sympy.Rational(c.numerator, c.denominator) * x ** i * y ** j for (i, j), c in p.items()),
               sympy.Integer(0))


def _from_sympy(e) -> BivariatePoly:
    x, y = sympy.symbols("x y")
    P = sympy.Poly(sympy.expand(e), x, y)
    return BivariatePoly({m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


def irreducible_factors(p: BivariatePoly) -> List[BivariatePoly]:
    """Distinct irreducible factors over Q, each normalized to leading coefficient 1."""
    if p.is_constant():
        return []
    _, facs = sympy.factor_list(_to_sympy(p))
    return [_from_sympy(f).normalized() for f, _ in facs]


def _candidate_denominators(raw: RawSystem) -> List[BivariatePoly]:
    (f1, _), (_, f3) = raw.phi_mat
    irr: List[BivariatePoly] = []
    for p in (f1, f3):
        for f in irreducible_factors(p):
            if f not in irr:
                irr.append(f)
    dens = []
    for mult in itertools.product(range(3), repeat=len(irr)):
        d = BivariatePoly.const(1)
        for f, k in zip(irr, mult):
            d = d * f ** k
        dens.append(d)
    dens.sort(key=lambda d: (d.degree, str(d)))
    return dens


def _monomials(bound: int) -> List[Tuple[int, int]]:
    ms = [(i, j) for i in range(bound + 1) for j in range(bound + 1)]
    # high degree first so that the free parameters of the solution space are the simple ones
    ms.sort(key=lambda m: (-(m[0] + m[1]), -m[1]))
    return ms


def _row_space(d: BivariatePoly, cols: Sequence[BivariatePoly], targets: Sequence[BivariatePoly],
               bound: int):
    """Basis of numerator pairs (u, v) making every u*a + v*b divisible by d.

    A row (u/d, v/d) of S meets the raw columns and delta in u*a + v*b for
    (a, b) in zip(cols, targets); each of these must come out polynomial.
    """
    mons = _monomials(bound)
    unknowns = [(0, m) for m in mons] + [(1, m) for m in mons]
    images = []
    for which, (i, j) in unknowns:
        mono = BivariatePoly.monomial(i, j)
        rems = []
        for a, b in zip(cols, targets):
            val = mono * (a if which == 0 else b)
            rems.append(val.divmod(d)[1])
        images.append(rems)
    keys = sorted({(k, m) for rems in images for k, r in enumerate(rems) for m in r.terms})
    rows = [[img[k].coeff(*m) for img in images] for k, m in keys]
    basis = nullspace(rows, len(unknowns)) if rows else [
        [Fraction(int(t == s)) for t in range(len(unknowns))] for s in range(len(unknowns))]
    out = []
    for vec in basis:
        u = BivariatePoly({m: c for (w, m), c in zip(unknowns, vec) if w == 0 and c})
        v = BivariatePoly({m: c for (w, m), c in zip(unknowns, vec) if w == 1 and c})
        out.append((u, v))
    return out


@dataclass(frozen=True)
class SymmetrizerCandidate:
    S: Symmetrizer
    pair: PearsonPair

    def to_json(self) -> dict:
        return {**self.S.to_json(), "pair": self.pair.to_json()}


def _poly_vec(ps: Sequence[BivariatePoly], mons: Sequence[Tuple[int, int]]) -> List[Fraction]:
    return [p.coeff(*m) for p in ps for m in mons]


def _positive_definite_at(P: PearsonPair, pt) -> bool:
    a = P.phi11(*pt)
    d = P.phi11(*pt) * P.phi22(*pt) - P.phi12(*pt) ** 2
    return a > 0 and d > 0


def search_symmetrizer(raw: RawSystem, sys: KoornwinderSystem, deg_bound: int = 1,
                       max_combo_dim: int = 4) -> List[SymmetrizerCandidate]:
    """Symmetrizers S = [[u1/d1, v1/d1], [u2/d2, v2/d2]] with polynomial S phi, S delta.

    Denominators range over products of the irreducible factors of phi1 and
    phi3 (multiplicity <= 2); numerators have degree <= deg_bound in each
    variable.  For each denominator pair only the lowest (deg Phi, deg Psi)
    level with a nonsingular member is kept.
    """
    if deg_bound < 0:
        raise PearsonError("deg_bound must be >= 0")
    (f1, f2), (_, f3) = raw.phi_mat
    d1_, d2_ = raw.delta
    zero = BivariatePoly()
    # S row (u, v) maps to (u f1, u f2 + v f3, u delta1 + v delta2)
    cols = [f1, f2, d1_]
    targets = [zero, f3, d2_]
    dens = _candidate_denominators(raw)
    spaces = {d: _row_space(d, cols, targets, deg_bound) for d in dens}
    pt = sys.domain.interior_point
    found: Dict[Tuple, SymmetrizerCandidate] = {}

    def row_images(d, u, v):
        return [(u * a + v * b).exact_div(d) for a, b in zip(cols, targets)]

    for da, db in itertools.product(dens, repeat=2):
        V1, V2 = spaces[da], spaces[db]
        if not V1 or not V2:
            continue
        im1 = [row_images(da, u, v) for u, v in V1]
        im2 = [row_images(db, u, v) for u, v in V2]
        # symmetry: Phi12 from row 1 equals Phi21 from row 2
        mons = sorted({m for ims in im1 + im2 for p in ims for m in p.terms})
        nunk = len(V1) + len(V2)
        sym_rows = []
        for m in mons:
            sym_rows.append([im[1].coeff(*m) for im in im1] + [-im[0].coeff(*m) for im in im2])
        W = nullspace(sym_rows, nunk)
        if not W:
            continue

        def images(vec):
            r1 = [sum((p[k] * c for p, c in zip(im1, vec[:len(V1)]) if c), zero) for k in range(3)]
            r2 = [sum((p[k] * c for p, c in zip(im2, vec[len(V1):]) if c), zero) for k in range(3)]
            return r1, r2

        W_imgs = [images(w) for w in W]
        all_mons = sorted({m for r1, r2 in W_imgs for p in r1 + r2 for m in p.terms})
        max_phi = max(_deg([*r1[:2], *r2[:2]]) for r1, r2 in W_imgs)
        max_psi = max(_deg([r1[2], r2[2]]) for r1, r2 in W_imgs)
        for tphi, tpsi in sorted(itertools.product(range(max_phi + 1), range(max_psi + 1)),
                                 key=lambda t: (t[0], t[1])):
            hi_phi = [m for m in all_mons if m[0] + m[1] > tphi]
            hi_psi = [m for m in all_mons if m[0] + m[1] > tpsi]
            rows = []
            for m in hi_phi:
                for k in range(2):
                    rows.append([r1[k].coeff(*m) for r1, _ in W_imgs])
                    rows.append([r2[k].coeff(*m) for _, r2 in W_imgs])
            for m in hi_psi:
                rows.append([r1[2].coeff(*m) for r1, _ in W_imgs])
                rows.append([r2[2].coeff(*m) for _, r2 in W_imgs])
            sub = nullspace(rows, len(W)) if rows else [
                [Fraction(int(i == j)) for i in range(len(W))] for j in range(len(W))]
            if not sub:
                continue
            if len(sub) <= max_combo_dim:
                combos = [c for c in itertools.product((-1, 0, 1), repeat=len(sub)) if any(c)]
            else:
                combos = [tuple(int(i == j) for i in range(len(sub))) for j in range(len(sub))]
            hits = []
            for combo in combos:
                coef = [sum((c * s[k] for c, s in zip(combo, sub)), Fraction(0)) for k in range(len(W))]
                vec = [sum((c * w[k] for c, w in zip(coef, W)), Fraction(0)) for k in range(nunk)]
                u1 = sum((u * c for (u, _), c in zip(V1, vec[:len(V1)]) if c), zero)
                v1 = sum((v * c for (_, v), c in zip(V1, vec[:len(V1)]) if c), zero)
                u2 = sum((u * c for (u, _), c in zip(V2, vec[len(V1):]) if c), zero)
                v2 = sum((v * c for (_, v), c in zip(V2, vec[len(V1):]) if c), zero)
                S = Symmetrizer(RF(u1, da), RF(v1, da), RF(u2, db), RF(v2, db))
                if mat_det(S.matrix).is_zero():
                    continue
                try:
                    P = symmetrize_with(S, raw, sys)
                except PearsonError:
                    continue
                hits.append(_orient(S, P, pt))
            for S, P in hits:
                key = _scale_key(P)
                if key not in found:
                    found[key] = SymmetrizerCandidate(S, P)
            if hits:
                break
    out = sorted(found.values(), key=lambda c: (c.pair.deg_phi, c.pair.deg_psi,
                                               not _positive_definite_at(c.pair, pt), _complexity(c.S),
                                               _sort_str(c.pair)))
    return out


def _complexity(S: Symmetrizer) -> Tuple[int, int]:
    """Total denominator degree, then total number of numerator terms."""
    ents = (S.A, S.B, S.C, S.D)
    return (sum(max(e.den.degree, 0) for e in ents), sum(len(e.num.terms) for e in ents))


def _sort_str(P: PearsonPair) -> str:
    return "|".join(str(e) for e in (P.phi11, P.phi12, P.phi22, P.psi1, P.psi2))


def _orient(S: Symmetrizer, P: PearsonPair, pt):
    """Scale so the first nonzero Phi entry has leading coefficient 1 and trace(Phi) > 0 inside."""
    lead = next(e for e in (P.phi11, P.phi22, P.phi12) if not e.is_zero()).leading_coeff
    c = 1 / lead
    if (P.phi11(*pt) + P.phi22(*pt)) * c < 0:
        c = -c
    if c == 1:
        return S, P
    S2 = Symmetrizer(S.A * c, S.B * c, S.C * c, S.D * c)
    return S2, P.scaled(c)


def _scale_key(P: PearsonPair):
    return (P.phi11, P.phi12, P.phi22, P.psi1, P.psi2)


# ---------------------------------------------------------------------------
# decomposition method
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionInput:
    """phi^{-1} delta = (F/E, H/E) together with auxiliary a, b, c.

    When built from a factor split E = a0*a1*c1 the auxiliaries are
    a = a2/(a0 c1), b = b1/a0, c = c2/(a0 a1), and ac - b^2 = 1/E is the
    statement a0 = a2 c2 - a1 b1^2 c1.
    """

    E: BivariatePoly
    F: BivariatePoly
    H: BivariatePoly
    a: RationalFunction2
    b: RationalFunction2
    c: RationalFunction2
    split: Optional[Tuple[BivariatePoly, ...]] = None

    @classmethod
    def build(cls, sys: KoornwinderSystem, a0, a1, c1, a2, b1, c2) -> "DecompositionInput":
        a0, a1, c1, a2, b1, c2 = (BivariatePoly.coerce(p) for p in (a0, a1, c1, a2, b1, c2))
        if a0 != a2 * c2 - a1 * b1 * b1 * c1:
            raise PearsonError("factor split violates a0 = a2 c2 - a1 b1^2 c1")
        E = a0 * a1 * c1
        F, H = _numerators(sys, E)
        return cls(E, F, H, RF(a2, a0 * c1), RF(b1, a0), RF(c2, a0 * a1), (a0, a1, c1, a2, b1, c2))

    @classmethod
    def from_auxiliary(cls, sys: KoornwinderSystem, a, b, c, E=None) -> "DecompositionInput":
        a, b, c = RF.coerce(a), RF.coerce(b), RF.coerce(c)
        if E is None:
            E = _infer_E(sys, a, b, c)
        E = BivariatePoly.coerce(E)
        F, H = _numerators(sys, E)
        return cls(E, F, H, a, b, c)

    def identity_holds(self) -> bool:
        return (self.a * self.c - self.b * self.b) * self.E == RF(1)

    def nonvanishing_inside(self, sys: KoornwinderSystem) -> bool:
        pts = [sys.domain.interior_point]
        x0, y0 = sys.domain.interior_point
        for t in sample_points(sys.w1.interval, 3):
            pts.append((t, y0 * t / x0 if x0 else y0))
        return all(self.E(*p) != 0 for p in pts)

    def to_json(self) -> dict:
        return {"E": str(self.E), "F": str(self.F), "H": str(self.H),
                "a": str(self.a), "b": str(self.b), "c": str(self.c),
                "identity_holds": self.identity_holds()}


def _infer_E(sys: KoornwinderSystem, a, b, c) -> BivariatePoly:
    """First of 1/(ac - b^2), the reduced common denominator of grad ln w, or
    det(phi) (the unreduced Cramer denominator) that makes every entry polynomial."""
    lcd = _lcm_dens(grad_log_weight(sys))
    cands = []
    det = a * c - b * b
    if not det.is_zero() and (1 / det).is_polynomial():
        inv = (1 / det).as_polynomial()
        if inv.divmod(lcd)[1].is_zero():
            cands.append(inv)
    cands.append(lcd)
    cands.append(mat_det(raw_system(sys).phi_mat).as_polynomial().normalized())
    pt = sys.domain.interior_point
    cands = [E if E(*pt) > 0 else -E for E in cands]
    for E in cands:
        F, H = _numerators(sys, E)
        if all(e.is_polynomial() for e in (a * E, b * E, c * E, a * F + b * H, b * F + c * H)):
            return E
    return cands[0]


def _lcm_dens(rfs) -> BivariatePoly:
    from .algebra import lcm
    out = BivariatePoly.const(1)
    for r in rfs:
        out = lcm(out, r.den)
    return out


def _numerators(sys: KoornwinderSystem, E: BivariatePoly):
    gx, gy = grad_log_weight(sys)
    F, H = gx * E, gy * E
    if not (F.is_polynomial() and H.is_polynomial()):
        raise PearsonError(f"E = {E} does not clear the denominators of grad ln w")
    return F.as_polynomial(), H.as_polynomial()


def decomposition_method(inp: DecompositionInput, sys: KoornwinderSystem,
                         require_identity: bool = True) -> PearsonPair:
    if require_identity and not inp.identity_holds():
        raise PearsonError("decomposition identity violated")
    a, b, c, E, F, H = inp.a, inp.b, inp.c, inp.E, inp.F, inp.H
    entries = {"aE": a * E, "bE": b * E, "cE": c * E, "aF+bH": a * F + b * H, "bF+cH": b * F + c * H}
    bad = [f"{k} = {v}" for k, v in entries.items() if not v.is_polynomial()]
    if bad:
        raise PearsonError("non-polynomial entries: " + "; ".join(bad))
    e = {k: v.as_polynomial() for k, v in entries.items()}
    P = PearsonPair.from_gradient_form([[e["aE"], e["bE"]], [e["bE"], e["cE"]]],
                                       [e["aF+bH"], e["bF+cH"]], "decomposition")
    return _verified(P, sys)
