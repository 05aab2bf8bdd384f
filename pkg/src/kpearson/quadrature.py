"""Gauss rules from recurrences and numeric orthogonality checks over the domain.

With y = rho(x) t the inner product becomes

    <p, q> = int u0(x) int p q (x, rho(x) t) w2(t) dt dx,   u0 = rho w1,

so a product of the Gauss rule of u0 and the Gauss rule of w2 integrates
polynomials exactly.  In Case II the odd powers of rho always come with odd
powers of t, whose w2-integrals vanish.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import mpmath

from .algebra import BivariatePoly
from .koornwinder import KoornwinderSystem, basis
from .pearson import PearsonPair
from .weights import UnivariateWeight, monic_recurrence, rho_modified

DEFAULT_DIGITS = 34
GUARD = 10


class QuadratureError(ValueError):
    pass


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class GaussRule:
    nodes: Tuple
    weights: Tuple
    source: str
    n: int
    digits: int

    def integrate(self, f):
        return mpmath.fsum(w * f(x) for x, w in zip(self.nodes, self.weights))


def _eval(b, c, k: int, x):
    """(p_k(x), p_k'(x)) from the monic recurrence."""
    p0, p1 = mpmath.mpf(1), x - b[0]
    d0, d1 = mpmath.mpf(0), mpmath.mpf(1)
    if k == 0:
        return p0, d0
    for j in range(1, k):
        p0, p1 = p1, (x - b[j]) * p1 - c[j] * p0
        d0, d1 = d1, p0 + (x - b[j]) * d1 - c[j] * d0
    return p1, d1


def _bracket_root(b, c, k, lo, hi, eps):
    flo = _eval(b, c, k, lo)[0]
    fhi = _eval(b, c, k, hi)[0]
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise QuadratureError("non-bracketable root: the recurrence does not come from a positive weight")
    # bisection to a coarse width, then Newton
    for _ in range(60):
        mid = (lo + hi) / 2
        fm = _eval(b, c, k, mid)[0]
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < mpmath.mpf(10) ** -12 * (1 + abs(lo)):
            break
    x = (lo + hi) / 2
    for _ in range(50):
        p, d = _eval(b, c, k, x)
        if d == 0:
            break
        step = p / d
        x_new = x - step
        if not (lo - (hi - lo) <= x_new <= hi + (hi - lo)):
            break
        x = x_new
        if abs(step) <= eps * (1 + abs(x)):
            break
    return x


def _bounds(w: UnivariateWeight, b, c, n):
    a_, b_ = w.interval
    # Gershgorin discs of the Jacobi matrix contain every zero
    radius = [abs(b[i]) + (mpmath.sqrt(c[i]) if i >= 1 else 0) + (mpmath.sqrt(c[i + 1]) if i + 1 < n else 0)
              for i in range(n)]
    g = max(radius) + 1
    lo = -g if a_ == -mpmath.inf or a_ == float("-inf") else max(_mp(Fraction(a_)), -g)
    hi = g if b_ == mpmath.inf or b_ == float("inf") else min(_mp(Fraction(b_)), g)
    return lo, hi


@lru_cache(maxsize=None)
def gauss_rule(w: UnivariateWeight, n: int, prec: int = DEFAULT_DIGITS) -> GaussRule:
    """n-point Gauss rule of w, exact for degree <= 2n - 1."""
    if n < 1:
        raise QuadratureError("n must be >= 1")
    if prec < 15:
        raise QuadratureError("precision must be at least 15 digits")
    rec = monic_recurrence(w, n)
    with mpmath.workdps(prec + GUARD):
        b = [_mp(v) for v in rec.b]
        c = [_mp(v) for v in rec.c]
        for k in range(1, n):
            if c[k] <= 0:
                raise QuadratureError(f"recurrence coefficient c_{k} <= 0")
        eps = mpmath.mpf(10) ** -(prec + GUARD - 2)
        lo, hi = _bounds(w, b, c, n)
        roots: List = []
        for k in range(1, n + 1):
            pts = [lo] + roots + [hi]
            roots = [_bracket_root(b, c, k, pts[i], pts[i + 1], eps) for i in range(k)]
        mu0 = w.mass()
        weights = []
        for x in roots:
            s = mpmath.mpf(0)
            h = mpmath.mpf(1)
            for k in range(n):
                if k >= 1:
                    h *= c[k]
                s += _eval(b, c, k, x)[0] ** 2 / h
            weights.append(mu0 / s)
        nodes = tuple(+x for x in roots)
        return GaussRule(nodes, tuple(weights), w.label, n, prec)


# ---------------------------------------------------------------------------
# bivariate inner products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductRule:
    x_rule: GaussRule
    t_rule: GaussRule
    points: Tuple[Tuple, ...]
    weights: Tuple
    digits: int


@lru_cache(maxsize=None)
def product_rule(sys: KoornwinderSystem, degree: int, prec: int = DEFAULT_DIGITS) -> ProductRule:
    """Cubature exact for polynomials of total degree <= degree over the domain."""
    n = degree // 2 + 2
    u0 = rho_modified(sys.w1, sys.rho, 0)
    xr = gauss_rule(u0, n, prec)
    tr = gauss_rule(sys.w2, n, prec)
    pts, wts = [], []
    with mpmath.workdps(prec + GUARD):
        for x, wx in zip(xr.nodes, xr.weights):
            r = sys.rho(x)
            for t, wt in zip(tr.nodes, tr.weights):
                pts.append((x, r * t))
                wts.append(wx * wt)
    return ProductRule(xr, tr, tuple(pts), tuple(wts), prec)


def _values(p: BivariatePoly, pts) -> List:
    terms = list(p.items())
    out = []
    for x, y in pts:
        out.append(mpmath.fsum(_mp(c) * x ** i * y ** j for (i, j), c in terms))
    return out


def inner_product(sys: KoornwinderSystem, p: BivariatePoly, q: BivariatePoly, prec: int = DEFAULT_DIGITS):
    deg = max(p.degree, 0) + max(q.degree, 0)
    rule = product_rule(sys, deg, prec)
    with mpmath.workdps(prec + GUARD):
        vp = _values(p, rule.points)
        vq = _values(q, rule.points)
        return mpmath.fsum(w * a * b for w, a, b in zip(rule.weights, vp, vq))


@dataclass(frozen=True)
class OrthoReport:
    passed: bool
    max_residual: object
    worst_pair: Optional[Tuple[Tuple[int, int], Tuple[int, int]]]
    N: int
    digits: int
    tolerance: float
    failure: str = ""

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": mpmath.nstr(self.max_residual, 6) if self.max_residual is not None else None,
            "worst_pair": [list(i) for i in self.worst_pair] if self.worst_pair else None,
            "N": self.N,
            "precision": self.digits,
            "tolerance": self.tolerance,
            "failure": self.failure,
        }


def orthocheck(sys: KoornwinderSystem, N: int, prec: int = DEFAULT_DIGITS, tol: float = 1e-10,
               polys: Optional[Dict[Tuple[int, int], BivariatePoly]] = None) -> OrthoReport:
    """max |<P, Q>| / (|P| |Q|) over distinct basis pairs with n <= N."""
    if N < 1:
        raise QuadratureError("N must be >= 1")
    polys = dict(polys) if polys is not None else basis(sys, N)
    rule = product_rule(sys, 2 * N, prec)
    with mpmath.workdps(prec + GUARD):
        idx = sorted(polys)
        vals = {k: _values(polys[k], rule.points) for k in idx}
        norms = {}
        for k in idx:
            v = mpmath.fsum(w * a * a for w, a in zip(rule.weights, vals[k]))
            if not v > 0:
                return OrthoReport(False, None, (k, k), N, prec, tol, f"nonpositive squared norm at {k}")
            norms[k] = mpmath.sqrt(v)
        worst, where = mpmath.mpf(0), None
        for a_i, a in enumerate(idx):
            for b in idx[a_i + 1:]:
                ip = mpmath.fsum(w * u * v for w, u, v in zip(rule.weights, vals[a], vals[b]))
                r = abs(ip) / (norms[a] * norms[b])
                if r > worst or where is None:
                    worst, where = r, (a, b)
        return OrthoReport(bool(worst <= tol), +worst, where, N, prec, tol)


@dataclass(frozen=True)
class MomentMatrixVerdict:
    passed: bool
    matrix: Tuple[Tuple, Tuple]
    det: object

    def to_json(self) -> dict:
        return {"passed": self.passed, "det": mpmath.nstr(self.det, 12),
                "matrix": [[mpmath.nstr(e, 12) for e in row] for row in self.matrix]}


def moment_matrix_check(P: PearsonPair, sys: KoornwinderSystem, prec: int = DEFAULT_DIGITS) -> MomentMatrixVerdict:
    """det <1, Phi> != 0, relative to the size of the entries."""
    one = BivariatePoly.const(1)
    with mpmath.workdps(prec + GUARD):
        M = tuple(tuple(inner_product(sys, one, e, prec) for e in row) for row in P.Phi)
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        scale = max(abs(e) for row in M for e in row) ** 2
        ok = scale > 0 and abs(det) > mpmath.mpf(10) ** (-(prec // 2)) * scale
    return MomentMatrixVerdict(bool(ok), M, det)


def moment_errors(w: UnivariateWeight, n: int, prec: int = DEFAULT_DIGITS) -> List:
    """Relative errors of the n-point rule on x^k / mu0, k <= 2n - 1.

    Vanishing exact moments are measured against the absolute moment
    sum w_i |x_i|^k / mu0 instead, or absolutely when that vanishes too.
    """
    rule = gauss_rule(w, n, prec)
    out = []
    with mpmath.workdps(prec + GUARD):
        mu0 = w.mass()
        for k in range(2 * n):
            approx = mpmath.fsum(wi * x ** k for x, wi in zip(rule.nodes, rule.weights)) / mu0
            exact = _mp(w.moment(k))
            scale = abs(exact) if exact != 0 else \
                mpmath.fsum(wi * abs(x) ** k for x, wi in zip(rule.nodes, rule.weights)) / mu0
            out.append(abs(approx - exact) / (scale if scale else 1))
    return out
