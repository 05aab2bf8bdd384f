"""Koornwinder systems: P_{n,m} = p_{n-m}(x; m) rho(x)^m q_m(y / rho(x)).

Case I has rho linear; Case II has rho = sqrt(quadratic) and an even w2 on a
symmetric interval.  The bivariate weight is w1(x) w2(y / rho(x)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import mpmath

from .algebra import (BivariatePoly, RationalFunction2, UniPoly, X, Y, as_fraction, fraction_str,
                      poly_gcd)
from .weights import (Endpoint, FactoredDensity, UnivariateWeight, _normalize_base,
                      interior_point, monic_poly, rho_modified, sample_points)


class KoornwinderError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rho
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RhoFunction:
    case: str
    rho_sq: UniPoly
    linear_form: Optional[UniPoly] = None

    def __post_init__(self):
        if self.case not in ("I", "II"):
            raise KoornwinderError(f"unknown case {self.case!r}")
        if self.rho_sq.is_zero() or self.rho_sq.degree > 2:
            raise KoornwinderError("rho^2 must be a nonzero polynomial of degree <= 2")
        if self.case == "I":
            if self.linear_form is None or self.linear_form.is_zero() or self.linear_form.degree > 1:
                raise KoornwinderError("Case I needs a nonzero linear form")
            if self.linear_form * self.linear_form != self.rho_sq:
                raise KoornwinderError("Case I rho^2 must be the square of its linear form")

    @classmethod
    def linear(cls, r1, r0) -> "RhoFunction":
        """rho(x) = r1 x + r0."""
        ell = UniPoly([as_fraction(r0), as_fraction(r1)])
        return cls("I", ell * ell, ell)

    @classmethod
    def sqrt(cls, a2, a1, a0) -> "RhoFunction":
        """rho(x) = sqrt(a2 x^2 + a1 x + a0)."""
        return cls("II", UniPoly([as_fraction(a0), as_fraction(a1), as_fraction(a2)]))

    @classmethod
    def one(cls) -> "RhoFunction":
        return cls.linear(0, 1)

    @property
    def is_constant(self) -> bool:
        return self.rho_sq.degree == 0

    def power(self, k: int) -> UniPoly:
        """rho^k as a polynomial (k >= 0, even k in Case II)."""
        if self.case == "I":
            return self.linear_form ** k
        if k % 2:
            raise KoornwinderError("odd power of a Case II rho is not a polynomial")
        return self.rho_sq ** (k // 2)

    def __call__(self, x):
        if self.case == "I":
            return self.linear_form(x)
        return mpmath.sqrt(self.rho_sq(mpmath.mpf(x) if isinstance(x, (int, Fraction)) else x))

    def describe(self) -> str:
        if self.case == "I":
            return str(self.linear_form)
        return f"sqrt({self.rho_sq})"


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainDescriptor:
    x_range: Tuple[Endpoint, Endpoint]
    y_bounds: Tuple[Endpoint, Endpoint]
    boundary_polynomials: Tuple[BivariatePoly, ...]
    interior_point: Tuple[Fraction, Fraction]

    def describe(self) -> str:
        c, d = self.y_bounds
        return f"{_ep(self.x_range[0])} < x < {_ep(self.x_range[1])}, {_ep(c)}*rho(x) < y < {_ep(d)}*rho(x)"


def _ep(v: Endpoint) -> str:
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    return fraction_str(Fraction(v))


@dataclass(frozen=True)
class KoornwinderSystem:
    w1: UnivariateWeight
    w2: UnivariateWeight
    rho: RhoFunction
    domain: DomainDescriptor
    name: str = field(default="custom", compare=False)


def _reflect(p: UniPoly) -> UniPoly:
    return UniPoly((-c if k % 2 else c) for k, c in enumerate(p.coeffs))


def is_even_density(dens: FactoredDensity) -> bool:
    if any(c % 2 for c in range(len(dens.exp_arg.coeffs)) if dens.exp_arg.coeffs[c]):
        return False
    here = {b: e for b, e in dens.factors}
    for b, e in dens.factors:
        _, rb = _normalize_base(_reflect(b), Fraction(0))
        if here.get(rb) != e:
            return False
    return True


def _check_rho(rho: RhoFunction, interval) -> None:
    for t in sample_points(interval):
        if rho.rho_sq(t) <= 0 or (rho.case == "I" and rho.linear_form(t) <= 0):
            raise KoornwinderError(f"rho must be positive on the open x-interval (fails at x = {fraction_str(t)})")
    if rho.case == "II":
        pts = [Fraction(e) for e in interval if e not in (math.inf, -math.inf)]
        a2, a1 = rho.rho_sq.coeff(2), rho.rho_sq.coeff(1)
        if a2:
            v = -a1 / (2 * a2)
            lo, hi = interval
            if lo < v < hi:
                pts.append(v)
        for t in pts:
            if rho.rho_sq(t) < 0:
                raise KoornwinderError(f"rho^2 is negative at x = {fraction_str(t)}")


def _normalize2(p: BivariatePoly, pt) -> BivariatePoly:
    q = p.normalized()
    if q(*pt) < 0:
        q = -q
    return q


def _domain(w1: UnivariateWeight, w2: UnivariateWeight, rho: RhoFunction) -> DomainDescriptor:
    a, b = w1.interval
    c, d = w2.interval
    x0 = interior_point(w1.interval)
    if rho.case == "I":
        y0 = rho.linear_form(x0) * interior_point(w2.interval)
    else:
        y0 = Fraction(0)
    pt = (x0, y0)
    polys: List[BivariatePoly] = []
    for e in (c, d):
        if e in (math.inf, -math.inf):
            continue
        e = Fraction(e)
        if rho.case == "I":
            polys.append(Y - rho.linear_form.to_bivariate() * e)
        elif e > 0:
            polys.append(Y * Y - rho.rho_sq.to_bivariate() * (e * e))
    finite_y = all(e not in (math.inf, -math.inf) for e in (c, d))
    for e in (a, b):
        if e in (math.inf, -math.inf):
            continue
        # the y-range collapses where rho vanishes, so x = e is not an edge there
        if finite_y and rho.rho_sq(Fraction(e)) == 0:
            continue
        polys.append(X - Fraction(e))
    seen, out = set(), []
    for p in polys:
        q = _normalize2(p, pt)
        if q not in seen:
            seen.add(q)
            out.append(q)
    out.sort(key=lambda p: (-p.degree, str(p)))
    return DomainDescriptor((a, b), (c, d), tuple(out), pt)


def make_system(w1: UnivariateWeight, w2: UnivariateWeight, rho: RhoFunction,
                name: str = "custom") -> KoornwinderSystem:
    if rho.case == "II":
        c, d = w2.interval
        if not (c == -d):
            raise KoornwinderError("Case II requires w2 on a symmetric interval (-d, d)")
        if not is_even_density(w2.density):
            raise KoornwinderError("Case II requires even w2")
    _check_rho(rho, w1.interval)
    return KoornwinderSystem(w1, w2, rho, _domain(w1, w2, rho), name)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def lift(q: UniPoly, rho: RhoFunction, m: int) -> BivariatePoly:
    """rho^m q(y / rho) as a polynomial in (x, y)."""
    if q.degree > m:
        raise KoornwinderError(f"deg q = {q.degree} exceeds m = {m}")
    out = BivariatePoly()
    for j, c in enumerate(q.coeffs):
        if not c:
            continue
        if rho.case == "II" and (m - j) % 2:
            raise KoornwinderError("non-polynomial lift")
        out = out + rho.power(m - j).to_bivariate() * BivariatePoly.monomial(0, j, c)
    return out


@lru_cache(maxsize=None)
def build_polynomial(sys: KoornwinderSystem, n: int, m: int) -> BivariatePoly:
    if not 0 <= m <= n:
        raise KoornwinderError(f"need 0 <= m <= n, got (n, m) = ({n}, {m})")
    p = monic_poly(rho_modified(sys.w1, sys.rho, m), n - m)
    q = monic_poly(sys.w2, m)
    return p.to_bivariate("x") * lift(q, sys.rho, m)


def basis(sys: KoornwinderSystem, N: int) -> Dict[Tuple[int, int], BivariatePoly]:
    """{(n, m): P_{n,m}} for n <= N, in graded order."""
    return {(n, m): build_polynomial(sys, n, m) for n in range(N + 1) for m in range(n + 1)}


# ---------------------------------------------------------------------------
# bivariate weight
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredWeight2:
    """prod base_i^{e_i} * exp(exp_argument), up to a positive constant."""

    factors: Tuple[Tuple[BivariatePoly, Fraction], ...]
    exp_argument: RationalFunction2

    def describe(self) -> str:
        parts = []
        for b, e in self.factors:
            parts.append(f"({b})^{fraction_str(e)}" if e != 1 else f"({b})")
        if not self.exp_argument.is_zero():
            parts.append(f"exp({self.exp_argument})")
        return " * ".join(parts) or "1"

    def __call__(self, x, y):
        v = mpmath.exp(self.exp_argument(x, y))
        for b, e in self.factors:
            v *= mpmath.power(b(x, y), mpmath.mpf(e.numerator) / e.denominator)
        return v


def _insert2(factors: List[Tuple[BivariatePoly, Fraction]], base: BivariatePoly, e: Fraction, pt) -> None:
    if e == 0 or base.is_constant():
        return
    B = _normalize2(base, pt)
    for k, (b, eb) in enumerate(factors):
        g = poly_gcd(B, b)
        if g.is_constant():
            continue
        del factors[k]
        g = _normalize2(g, pt)
        _insert2(factors, g, eb + e, pt)
        _insert2(factors, b.exact_div(g), eb, pt)
        _insert2(factors, B.exact_div(g), e, pt)
        return
    factors.append((B, e))


def _pair_even_bases(dens: FactoredDensity) -> List[Tuple[UniPoly, Fraction]]:
    """Merge b(t), b(-t) pairs so every base is even (Case II composition)."""
    todo = list(dens.factors)
    out = []
    while todo:
        b, e = todo.pop(0)
        _, rb = _normalize_base(_reflect(b), Fraction(0))
        if rb == b:
            out.append((b, e))
            continue
        k = next((i for i, (c, f) in enumerate(todo) if c == rb and f == e), None)
        if k is None:
            raise KoornwinderError("weight not expressible in factored polynomial form")
        todo.pop(k)
        out.append((b * rb, e))
    return out


@lru_cache(maxsize=None)
def factored_weight(sys: KoornwinderSystem) -> FactoredWeight2:
    rho, pt = sys.rho, sys.domain.interior_point
    factors: List[Tuple[BivariatePoly, Fraction]] = []
    for b, e in sys.w1.density.factors:
        _insert2(factors, b.to_bivariate("x"), e, pt)
    w2_bases = list(sys.w2.density.factors)
    if rho.case == "II":
        w2_bases = _pair_even_bases(sys.w2.density)
    for b, e in w2_bases:
        k = b.degree
        if rho.case == "II" and k % 2:
            raise KoornwinderError("weight not expressible in factored polynomial form")
        # b(y/rho) = rho^{-k} * sum c_j y^j rho^{k-j}
        _insert2(factors, lift(b, rho, k), e, pt)
        if rho.case == "I":
            _insert2(factors, rho.linear_form.to_bivariate(), -e * k, pt)
        else:
            _insert2(factors, rho.rho_sq.to_bivariate(), -e * k / 2, pt)
    exp_arg = RationalFunction2.coerce(sys.w1.density.exp_arg.to_bivariate("x"))
    for j, c in enumerate(sys.w2.density.exp_arg.coeffs):
        if not c:
            continue
        if rho.case == "I":
            den = rho.linear_form.to_bivariate() ** j
        elif j % 2 == 0:
            den = rho.rho_sq.to_bivariate() ** (j // 2)
        else:
            raise KoornwinderError("weight not expressible in factored polynomial form")
        exp_arg = exp_arg + RationalFunction2(BivariatePoly.monomial(0, j, c), den)
    factors.sort(key=lambda be: (be[0].degree, str(be[0])))
    return FactoredWeight2(tuple(factors), exp_arg)


def grad_log_weight(sys: KoornwinderSystem) -> Tuple[RationalFunction2, RationalFunction2]:
    fw = factored_weight(sys)
    gx = fw.exp_argument.partial("x")
    gy = fw.exp_argument.partial("y")
    for b, e in fw.factors:
        gx = gx + RationalFunction2(b.partial("x") * e, b)
        gy = gy + RationalFunction2(b.partial("y") * e, b)
    return gx, gy


def weight_value(sys: KoornwinderSystem, x, y):
    """w1(x) w2(y / rho(x)) evaluated numerically."""
    return sys.w1(x) * sys.w2(y / sys.rho(x))
