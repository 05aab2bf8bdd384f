"""Univariate (semi)classical weights with Pearson data.

A weight carries its interval, a factored density
``const * prod base_i(x)**e_i * exp(E(x))`` and a Pearson pair (phi, psi)
with (phi w)' = psi w.  Moments are kept normalized by the total mass so the
built-in families stay in exact rational arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Callable, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
import sympy

from .algebra import RationalFunction2, UniPoly, as_fraction, fraction_str, uni_gcd

if TYPE_CHECKING:  # pragma: no cover
    from .koornwinder import RhoFunction

Endpoint = Union[Fraction, float]
FAMILIES = ("jacobi_sym", "jacobi01", "laguerre")

_X = UniPoly.x()


class WeightError(ValueError):
    pass


# ---------------------------------------------------------------------------
# factored densities
# ---------------------------------------------------------------------------

def interior_point(interval: Tuple[Endpoint, Endpoint]) -> Fraction:
    a, b = interval
    if a == -math.inf and b == math.inf:
        return Fraction(0)
    if a == -math.inf:
        return Fraction(b) - 1
    if b == math.inf:
        return Fraction(a) + 1
    return (Fraction(a) + Fraction(b)) / 2


def sample_points(interval: Tuple[Endpoint, Endpoint], k: int = 5) -> List[Fraction]:
    a, b = interval
    if a == -math.inf and b == math.inf:
        return [Fraction(i - k // 2, 2) for i in range(k)]
    if b == math.inf:
        return [Fraction(a) + Fraction(i + 1, 2) for i in range(k)]
    if a == -math.inf:
        return [Fraction(b) - Fraction(i + 1, 2) for i in range(k)]
    a, b = Fraction(a), Fraction(b)
    return [a + (b - a) * Fraction(i + 1, k + 1) for i in range(k)]


def _normalize_base(base: UniPoly, x0: Fraction) -> Tuple[Fraction, UniPoly]:
    """Split base = c * B with |lc(B)| = 1 and B(x0) > 0."""
    c = abs(base.lc)
    B = base * (1 / c)
    if B(x0) < 0:
        B, c = -B, -c
    return c, B


@dataclass(frozen=True)
class FactoredDensity:
    """const_factors: (c, e) pairs meaning c**e; factors: (base, e) pairs."""

    factors: Tuple[Tuple[UniPoly, Fraction], ...] = ()
    exp_arg: UniPoly = field(default_factory=UniPoly)
    const_factors: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def exponent_of(self, base: UniPoly) -> Fraction:
        for b, e in self.factors:
            if b == base:
                return e
        return Fraction(0)

    def log_derivative(self) -> RationalFunction2:
        out = RationalFunction2.coerce(self.exp_arg.derivative().to_bivariate())
        for b, e in self.factors:
            out = out + RationalFunction2(b.derivative().to_bivariate() * e, b.to_bivariate())
        return out

    def evaluate(self, x):
        v = mpmath.exp(self.exp_arg(mpmath.mpf(x)))
        for b, e in self.factors:
            v *= mpmath.power(b(mpmath.mpf(x)), mpmath.mpf(e.numerator) / e.denominator)
        for c, e in self.const_factors:
            v *= mpmath.power(mpmath.mpf(c.numerator) / c.denominator, mpmath.mpf(e.numerator) / e.denominator)
        return v

    def insert(self, base: UniPoly, exponent, x0: Fraction) -> "FactoredDensity":
        """Multiply by base**exponent, keeping bases pairwise coprime."""
        exponent = as_fraction(exponent)
        factors = list(self.factors)
        consts = list(self.const_factors)
        _insert(factors, consts, base, exponent, x0)
        factors = [(b, e) for b, e in factors if e != 0]
        factors.sort(key=lambda be: (be[0].degree, be[0].coeffs))
        return replace(self, factors=tuple(factors), const_factors=tuple((c, e) for c, e in consts if c != 1 and e != 0))

    def describe(self, var: str = "x") -> str:
        parts = []
        for b, e in self.factors:
            s = str(b.to_bivariate()).replace("x", var)
            parts.append(f"({s})^{fraction_str(e)}" if e != 1 else f"({s})")
        if not self.exp_arg.is_zero():
            parts.append(f"exp({str(self.exp_arg.to_bivariate()).replace('x', var)})")
        return " * ".join(parts) or "1"


def _insert(factors: List[Tuple[UniPoly, Fraction]], consts: List[Tuple[Fraction, Fraction]],
            base: UniPoly, e: Fraction, x0: Fraction) -> None:
    if e == 0:
        return
    if base.degree <= 0:
        consts.append((abs(base.lc), e))
        return
    c, B = _normalize_base(base, x0)
    if c != 1:
        consts.append((c, e))
    for k, (b, eb) in enumerate(factors):
        g = uni_gcd(B, b)
        if g.degree < 1:
            continue
        del factors[k]
        _, g = _normalize_base(g, x0)
        _insert(factors, consts, g, eb + e, x0)
        _insert(factors, consts, b.exact_div(g), eb, x0)
        _insert(factors, consts, B.exact_div(g), e, x0)
        return
    parts = _rational_factors(B) if B.degree >= 2 else [(B, 1)]
    if len(parts) > 1 or parts[0][1] > 1:
        # B and every normalized factor are positive at x0 with |lc| = 1, so no constant is left over
        for f, k in parts:
            _insert(factors, consts, _normalize_base(f, x0)[1], e * k, x0)
        return
    factors.append((B, e))


def _rational_factors(B: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Irreducible factors of B over Q, with multiplicities (constant dropped)."""
    x = sympy.Symbol("x")
    _, fl = sympy.factor_list(sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(B.coeffs)], x))
    out = []
    for f, k in fl:
        cs = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in reversed(f.all_coeffs())]
        out.append((UniPoly(cs), k))
    return out


# ---------------------------------------------------------------------------
# weight descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnivariateWeight:
    kind: str
    interval: Tuple[Endpoint, Endpoint]
    density: FactoredDensity
    pearson_phi: UniPoly
    pearson_psi: UniPoly
    params: Tuple[Tuple[str, Fraction], ...] = ()
    moment_oracle: Optional[Callable[[int], Fraction]] = field(default=None, compare=True)
    mass_oracle: Optional[Callable[[], "mpmath.mpf"]] = field(default=None, compare=True)

    def __post_init__(self):
        if self.pearson_psi.degree < 1:
            raise WeightError("Pearson psi must have degree >= 1")

    def param(self, name: str) -> Fraction:
        return dict(self.params)[name]

    @property
    def label(self) -> str:
        ps = ", ".join(f"{k}={fraction_str(v)}" for k, v in self.params)
        return f"{self.kind}({ps})"

    def moment(self, k: int) -> Fraction:
        """k-th moment divided by the mass."""
        return _moment(self, k)

    def mass(self):
        """Total mass as an mpmath number at the current working precision."""
        return _mass(self)

    def __call__(self, x):
        return self.density.evaluate(x)


@dataclass(frozen=True)
class PearsonData1:
    phi: UniPoly
    psi: UniPoly
    psi_tilde: UniPoly
    class_s: int


@dataclass(frozen=True)
class Recurrence:
    """p_{k+1} = (x - b_k) p_k - c_k p_{k-1}; c[0] holds the normalized mass 1."""

    b: Tuple[Fraction, ...]
    c: Tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.b)


def _check_gt(name: str, value: Fraction, bound: int = -1) -> None:
    if not value > bound:
        raise WeightError(f"constraint {name} > {bound} violated ({name} = {fraction_str(value)})")


def jacobi_sym(alpha, beta) -> UnivariateWeight:
    """(1-x)^alpha (1+x)^beta on (-1, 1)."""
    a, b = as_fraction(alpha), as_fraction(beta)
    _check_gt("alpha", a)
    _check_gt("beta", b)
    dens = FactoredDensity().insert(1 - _X, a, Fraction(0)).insert(1 + _X, b, Fraction(0))
    return UnivariateWeight(
        "jacobi_sym", (Fraction(-1), Fraction(1)), dens,
        pearson_phi=1 - _X * _X,
        pearson_psi=(b - a) - (a + b + 2) * _X,
        params=(("alpha", a), ("beta", b)),
    )


def jacobi01(alpha, beta) -> UnivariateWeight:
    """(1-x)^alpha x^beta on (0, 1)."""
    a, b = as_fraction(alpha), as_fraction(beta)
    _check_gt("alpha", a)
    _check_gt("beta", b)
    x0 = Fraction(1, 2)
    dens = FactoredDensity().insert(1 - _X, a, x0).insert(_X, b, x0)
    return UnivariateWeight(
        "jacobi01", (Fraction(0), Fraction(1)), dens,
        pearson_phi=(1 - _X) * _X,
        pearson_psi=(b + 1) - (a + b + 2) * _X,
        params=(("alpha", a), ("beta", b)),
    )


def laguerre(alpha) -> UnivariateWeight:
    """x^alpha e^{-x} on (0, inf)."""
    a = as_fraction(alpha)
    _check_gt("alpha", a)
    dens = replace(FactoredDensity().insert(_X, a, Fraction(1)), exp_arg=-_X)
    return UnivariateWeight(
        "laguerre", (Fraction(0), math.inf), dens,
        pearson_phi=_X,
        pearson_psi=(a + 1) - _X,
        params=(("alpha", a),),
    )


_MAKERS = {"jacobi_sym": jacobi_sym, "jacobi01": jacobi01, "laguerre": laguerre}


def make_family(name: str, **params) -> UnivariateWeight:
    try:
        maker = _MAKERS[name]
    except KeyError:
        raise WeightError(f"unknown univariate family {name!r}; expected one of {', '.join(FAMILIES)}") from None
    return maker(**params)


def generic_weight(interval, density: FactoredDensity, phi: UniPoly, psi: UniPoly,
                   moment_oracle: Callable[[int], Fraction],
                   mass_oracle: Optional[Callable[[], "mpmath.mpf"]] = None) -> UnivariateWeight:
    """A weight described only by its Pearson pair and an exact moment oracle.

    ``moment_oracle(k)`` must return the k-th moment divided by the mass.
    """
    return UnivariateWeight("generic", tuple(interval), density, phi, psi,
                            moment_oracle=moment_oracle, mass_oracle=mass_oracle)


# ---------------------------------------------------------------------------
# Pearson data and class
# ---------------------------------------------------------------------------

def class_of(phi: UniPoly, psi: UniPoly) -> int:
    """max(deg phi - 2, deg psi - 1), floored at 0, for this particular pair."""
    if psi.degree < 1:
        raise WeightError("class is undefined for constant psi")
    return max(phi.degree - 2, psi.degree - 1, 0)


def pearson_tilde(w: UnivariateWeight) -> PearsonData1:
    phi, psi = w.pearson_phi, w.pearson_psi
    return PearsonData1(phi, psi, psi - phi.derivative(), class_of(phi, psi))


def pearson_residual(w: UnivariateWeight) -> RationalFunction2:
    """phi' + phi * (log w)' - psi; zero exactly when (phi w)' = psi w."""
    phi = w.pearson_phi.to_bivariate()
    return (RationalFunction2.coerce(w.pearson_phi.derivative().to_bivariate())
            + w.density.log_derivative() * phi
            - w.pearson_psi.to_bivariate())


# ---------------------------------------------------------------------------
# moments and mass
# ---------------------------------------------------------------------------

def _beta_moment(p: Fraction, q: Fraction, k: int) -> Fraction:
    """E[u^k] for density u^p (1-u)^q on (0, 1)."""
    out = Fraction(1)
    for j in range(k):
        out *= (p + 1 + j) / (p + q + 2 + j)
    return out


@lru_cache(maxsize=None)
def _moment(w: UnivariateWeight, k: int) -> Fraction:
    if w.kind == "jacobi01":
        return _beta_moment(w.param("beta"), w.param("alpha"), k)
    if w.kind == "jacobi_sym":
        a, b = w.param("alpha"), w.param("beta")
        # x = 2u - 1 with u ~ u^beta (1-u)^alpha
        return sum((Fraction(math.comb(k, i)) * 2 ** i * (-1) ** (k - i) * _beta_moment(b, a, i)
                    for i in range(k + 1)), Fraction(0))
    if w.kind == "laguerre":
        a = w.param("alpha")
        out = Fraction(1)
        for j in range(k):
            out *= a + 1 + j
        return out
    if w.moment_oracle is None:
        raise WeightError(f"weight {w.label} has no moment oracle")
    return as_fraction(w.moment_oracle(k))


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _mass(w: UnivariateWeight):
    if w.kind == "jacobi01":
        base = mpmath.beta(_mp(w.param("alpha")) + 1, _mp(w.param("beta")) + 1)
    elif w.kind == "jacobi_sym":
        a, b = _mp(w.param("alpha")), _mp(w.param("beta"))
        base = mpmath.power(2, a + b + 1) * mpmath.beta(a + 1, b + 1)
    elif w.kind == "laguerre":
        base = mpmath.gamma(_mp(w.param("alpha")) + 1)
    elif w.mass_oracle is not None:
        return w.mass_oracle()
    else:
        return mpmath.mpf(1)
    for c, e in w.density.const_factors:
        base *= mpmath.power(_mp(c), _mp(e))
    return base


# ---------------------------------------------------------------------------
# recurrences
# ---------------------------------------------------------------------------

def _jacobi_t(a: Fraction, b: Fraction, n: int) -> Tuple[List[Fraction], List[Fraction]]:
    """Monic Jacobi recurrence on (-1, 1) for (1-t)^a (1+t)^b."""
    bs, cs = [], [Fraction(1)]
    for k in range(n):
        s = 2 * k + a + b
        if k == 0:
            bs.append((b - a) / (a + b + 2))
        else:
            bs.append((b * b - a * a) / (s * (s + 2)))
        if k >= 1:
            if k == 1:
                cs.append(4 * (1 + a) * (1 + b) / ((a + b + 2) ** 2 * (a + b + 3)))
            else:
                cs.append(4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1)))
    return bs, cs


def chebyshev_algorithm(moments: Sequence[Fraction], n: int) -> Recurrence:
    """Monic recurrence coefficients from 2n exact moments (mu_0 = 1)."""
    mu = [as_fraction(m) for m in moments]
    if len(mu) < 2 * n:
        raise WeightError(f"need {2 * n} moments, got {len(mu)}")
    if mu[0] <= 0:
        raise WeightError("indefinite or degenerate functional")
    b = [mu[1] / mu[0]]
    c = [mu[0]]
    sig_prev = [Fraction(0)] * (2 * n)
    sig = list(mu[: 2 * n])
    for k in range(1, n):
        new = [Fraction(0)] * (2 * n)
        for l in range(k, 2 * n - k):
            new[l] = sig[l + 1] - b[k - 1] * sig[l] - c[k - 1] * sig_prev[l]
        if new[k] <= 0:
            raise WeightError("indefinite or degenerate functional")
        b.append(new[k + 1] / new[k] - sig[k] / sig[k - 1])
        c.append(new[k] / sig[k - 1])
        sig_prev, sig = sig, new
    return Recurrence(tuple(b), tuple(c))


@lru_cache(maxsize=None)
def _recurrence(w: UnivariateWeight, n: int) -> Recurrence:
    if w.kind == "laguerre":
        a = w.param("alpha")
        return Recurrence(tuple(2 * k + a + 1 for k in range(n)),
                          (Fraction(1),) + tuple(k * (k + a) for k in range(1, n)))
    if w.kind in ("jacobi_sym", "jacobi01"):
        # jacobi01 is the (alpha, beta) Jacobi weight pulled back by t = 2x - 1
        bs, cs = _jacobi_t(w.param("alpha"), w.param("beta"), n)
        if w.kind == "jacobi01":
            bs = [(v + 1) / 2 for v in bs]
            cs = [cs[0]] + [v / 4 for v in cs[1:]]
        return Recurrence(tuple(bs), tuple(cs[:n]) if n else ())
    mus = [w.moment(k) for k in range(2 * n)]
    return chebyshev_algorithm(mus, n)


def monic_recurrence(w: UnivariateWeight, n: int) -> Recurrence:
    """First n coefficient pairs (b_0..b_{n-1}, c_0..c_{n-1})."""
    if n < 1:
        raise WeightError("n must be >= 1")
    return _recurrence(w, n)


@lru_cache(maxsize=None)
def _monic_polys(w: UnivariateWeight, n: int) -> Tuple[UniPoly, ...]:
    if n == 0:
        return (UniPoly.const(1),)
    rec = monic_recurrence(w, n)
    ps = [UniPoly.const(1), _X - rec.b[0]]
    for k in range(1, n):
        ps.append((_X - rec.b[k]) * ps[k] - ps[k - 1] * rec.c[k])
    return tuple(ps[: n + 1])


def monic_polys(w: UnivariateWeight, n: int) -> Tuple[UniPoly, ...]:
    """p_0, ..., p_n."""
    return _monic_polys(w, n)


def monic_poly(w: UnivariateWeight, n: int) -> UniPoly:
    return _monic_polys(w, n)[n]


# ---------------------------------------------------------------------------
# rho-modified weights
# ---------------------------------------------------------------------------

def _recognize(interval, dens: FactoredDensity) -> Optional[Tuple[str, Dict[str, Fraction]]]:
    one_minus, one_plus = 1 - _X, 1 + _X
    bases = {b: e for b, e in dens.factors}
    a, b = interval
    if not dens.exp_arg.is_zero():
        if (a, b) == (0, math.inf) and dens.exp_arg == -_X and set(bases) <= {_X}:
            return "laguerre", {"alpha": bases.get(_X, Fraction(0))}
        return None
    if (a, b) == (-1, 1) and set(bases) <= {one_minus, one_plus}:
        return "jacobi_sym", {"alpha": bases.get(one_minus, Fraction(0)), "beta": bases.get(one_plus, Fraction(0))}
    if (a, b) == (0, 1) and set(bases) <= {one_minus, _X}:
        return "jacobi01", {"alpha": bases.get(one_minus, Fraction(0)), "beta": bases.get(_X, Fraction(0))}
    return None


def rho_pearson_pair(w1: UnivariateWeight, rho: "RhoFunction", m: int) -> Tuple[UniPoly, UniPoly]:
    """Pearson pair of rho^{2m+1} w1, cleared to polynomials when needed."""
    phi1, psi1 = w1.pearson_phi, w1.pearson_psi
    rsq = rho.rho_sq
    if rsq.degree <= 0:
        return phi1, psi1
    # rho'/rho = (rho^2)'/(2 rho^2)
    shift = RationalFunction2(phi1.to_bivariate() * rsq.derivative().to_bivariate() * Fraction(2 * m + 1, 2),
                              rsq.to_bivariate())
    psi_m = shift + psi1.to_bivariate()
    if psi_m.is_polynomial():
        return phi1, psi_m.as_polynomial().as_unipoly()
    g = rho.linear_form if rho.case == "I" else rsq
    new_phi = g * phi1
    new_psi = psi_m * g.to_bivariate() + (g.derivative() * phi1).to_bivariate()
    return new_phi, new_psi.as_polynomial().as_unipoly()


@lru_cache(maxsize=None)
def rho_modified(w1: UnivariateWeight, rho: "RhoFunction", m: int) -> UnivariateWeight:
    """u_m = rho^{2m+1} w1 with its Pearson pair."""
    if m < 0:
        raise WeightError("m must be >= 0")
    x0 = interior_point(w1.interval)
    if rho.case == "I":
        dens = w1.density.insert(rho.linear_form, 2 * m + 1, x0)
    else:
        dens = w1.density.insert(rho.rho_sq, Fraction(2 * m + 1, 2), x0)
    phi, psi = rho_pearson_pair(w1, rho, m)
    hit = _recognize(w1.interval, dens)
    if hit is not None:
        kind, params = hit
        return UnivariateWeight(kind, w1.interval, dens, phi, psi, params=tuple(params.items()))
    if rho.case == "I" or rho.rho_sq.degree <= 0:
        mult = rho.linear_form ** (2 * m + 1) if rho.case == "I" else UniPoly.const(1)
        return _polynomial_modification(w1, dens, phi, psi, mult)
    return UnivariateWeight("generic", w1.interval, dens, phi, psi)


def _polynomial_modification(w1, dens, phi, psi, mult: UniPoly) -> UnivariateWeight:
    """Moments of mult(x) w1(x) from the exact moments of w1."""
    norm = sum((c * w1.moment(i) for i, c in enumerate(mult.coeffs)), Fraction(0))

    def moments(k: int) -> Fraction:
        return sum((c * w1.moment(k + i) for i, c in enumerate(mult.coeffs)), Fraction(0)) / norm

    def mass():
        return w1.mass() * _mp(norm)

    return UnivariateWeight("generic", w1.interval, dens, phi, psi,
                            params=w1.params, moment_oracle=moments, mass_oracle=mass)


# ---------------------------------------------------------------------------
# difference-differential structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BandReport:
    n: int
    coefficients: Dict[int, Fraction]

    @property
    def band(self) -> Tuple[int, ...]:
        return tuple(sorted(k for k, v in self.coefficients.items() if v))


def univariate_structure_check(w: UnivariateWeight, n: int) -> BandReport:
    """Expand phi p_n'' + psi p_n' in {p_i} by leading-term elimination."""
    s = class_of(w.pearson_phi, w.pearson_psi)
    ps = monic_polys(w, n + s + 1)
    pn = ps[n]
    f = w.pearson_phi * pn.derivative().derivative() + w.pearson_psi * pn.derivative()
    coeffs: Dict[int, Fraction] = {}
    while not f.is_zero():
        k = f.degree
        c = f.lc
        coeffs[k] = c
        f = f - ps[k] * c
    return BandReport(n, coeffs)
