"""Exact polynomial and rational-function arithmetic over the rationals.

Everything downstream (weights, Pearson systems, operators) runs on the three
types defined here:

* ``UniPoly``          dense univariate polynomial, coefficients low -> high
* ``BivariatePoly``    sparse polynomial in (x, y)
* ``RationalFunction2`` canonical quotient of two ``BivariatePoly``

Coefficients are ``fractions.Fraction``. Values are immutable once built.

Monomial order is graded, ties broken toward the higher power of ``y``. With
this order the monic Koornwinder polynomial P_{n,m} has leading monomial
x^{n-m} y^m, so the basis is unitriangular.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

Monomial = Tuple[int, int]
Scalar = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def mono_key(m: Monomial) -> Tuple[int, int]:
    """Sort key: total degree first, then y-power."""
    return (m[0] + m[1], m[1])


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("UniPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        return str(self.to_bivariate())

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other) -> "UniPoly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = as_fraction(other)
            return UniPoly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t):
        acc = 0 * t if not isinstance(t, (int, Fraction)) else ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return UniPoly(), self
        quot = [ZERO] * dq
        lc = other.lc
        for k in range(dq - 1, -1, -1):
            c = rem[k + other.degree] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UniPoly":
        return self * (1 / self.lc) if self.coeffs else self

    def to_bivariate(self, var: str = "x") -> "BivariatePoly":
        if var == "x":
            return BivariatePoly({(k, 0): c for k, c in enumerate(self.coeffs)})
        return BivariatePoly({(0, k): c for k, c in enumerate(self.coeffs)})


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------

class BivariatePoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Monomial, Scalar] | None = None):
        t = {}
        for m, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                t[(int(m[0]), int(m[1]))] = c
        self._terms: Dict[Monomial, Fraction] = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "BivariatePoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BivariatePoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivariatePoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BivariatePoly":
        return cls({(i, j): c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for zero."""
        return max((i + j for i, j in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        k = 0 if var == "x" else 1
        return max((m[k] for m in self._terms), default=-1)

    def sorted_monomials(self) -> List[Monomial]:
        return sorted(self._terms, key=mono_key, reverse=True)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=mono_key)

    @property
    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_monomial] if self._terms else ZERO

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0), ZERO)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivariatePoly.const(other)
        if isinstance(other, UniPoly):
            other = other.to_bivariate()
        return isinstance(other, BivariatePoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"BivariatePoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            c = self._terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = _mono_str(m)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{fraction_str(a)}*{mono}"
            else:
                body = fraction_str(a)
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def coerce(other) -> "BivariatePoly":
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, UniPoly):
            return other.to_bivariate()
        return BivariatePoly.const(other)

    def __add__(self, other):
        if isinstance(other, RationalFunction2):
            return NotImplemented
        o = self.coerce(other)
        t = dict(self._terms)
        for m, c in o._terms.items():
            s = t.get(m, ZERO) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return BivariatePoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFunction2):
            return NotImplemented
        return self + (-self.coerce(other))

    def __rsub__(self, other):
        return self.coerce(other) - self

    def scale(self, c) -> "BivariatePoly":
        c = as_fraction(c)
        if not c:
            return BivariatePoly()
        return BivariatePoly._raw({m: c * a for m, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, RationalFunction2):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self.coerce(other)
        t: Dict[Monomial, Fraction] = {}
        for (i1, j1), a in self._terms.items():
            for (i2, j2), b in o._terms.items():
                m = (i1 + i2, j1 + j2)
                t[m] = t.get(m, ZERO) + a * b
        return BivariatePoly._raw({m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / as_fraction(other))
        return RationalFunction2(self, other)

    def __rtruediv__(self, other):
        return RationalFunction2(self.coerce(other), self)

    def __pow__(self, k: int) -> "BivariatePoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = BivariatePoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def partial(self, var: str) -> "BivariatePoly":
        if var == "x":
            return BivariatePoly._raw({(i - 1, j): i * c for (i, j), c in self._terms.items() if i})
        if var == "y":
            return BivariatePoly._raw({(i, j - 1): j * c for (i, j), c in self._terms.items() if j})
        raise ValueError(f"unknown variable {var!r}")

    def __call__(self, x, y):
        # Horner in y with x-coefficients evaluated term by term
        acc = 0
        for (i, j), c in self._terms.items():
            acc = acc + c * x ** i * y ** j
        return acc

    def evaluate(self, x, y):
        return self(x, y)

    def y_coefficients(self) -> List[UniPoly]:
        """Write as sum_j c_j(x) y^j and return [c_0, c_1, ...]."""
        dy = self.degree_in("y")
        rows: List[List[Fraction]] = [[] for _ in range(dy + 1)]
        for (i, j), c in self._terms.items():
            r = rows[j]
            if len(r) <= i:
                r.extend([ZERO] * (i + 1 - len(r)))
            r[i] = c
        return [UniPoly(r) for r in rows]

    @classmethod
    def from_y_coefficients(cls, coeffs: Sequence[UniPoly]) -> "BivariatePoly":
        t = {}
        for j, u in enumerate(coeffs):
            for i, c in enumerate(u.coeffs):
                if c:
                    t[(i, j)] = c
        return cls._raw(t)

    def as_unipoly(self, var: str = "x") -> UniPoly:
        other = 1 if var == "x" else 0
        if any(m[other] for m in self._terms):
            raise ValueError(f"{self} depends on more than {var}")
        k = 0 if var == "x" else 1
        deg = self.degree
        return UniPoly(self._terms.get((d, 0) if k == 0 else (0, d), ZERO) for d in range(deg + 1))

    def divmod(self, other: "BivariatePoly") -> Tuple["BivariatePoly", "BivariatePoly"]:
        """Division by a single divisor in the graded order.

        The remainder is zero exactly when ``other`` divides ``self``.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lm = other.leading_monomial
        lc = other._terms[lm]
        p = dict(self._terms)
        quot: Dict[Monomial, Fraction] = {}
        rem: Dict[Monomial, Fraction] = {}
        while p:
            m = max(p, key=mono_key)
            c = p.pop(m)
            if m[0] >= lm[0] and m[1] >= lm[1]:
                s = (m[0] - lm[0], m[1] - lm[1])
                q = c / lc
                quot[s] = quot.get(s, ZERO) + q
                for (i, j), b in other._terms.items():
                    if (i, j) == lm:
                        continue
                    mm = (i + s[0], j + s[1])
                    v = p.get(mm, ZERO) - q * b
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
            else:
                rem[m] = c
        return BivariatePoly._raw(quot), BivariatePoly._raw(rem)

    def exact_div(self, other: "BivariatePoly") -> "BivariatePoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"({other}) does not divide ({self})")
        return q

    def normalized(self) -> "BivariatePoly":
        """Scale so that the leading coefficient is 1."""
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coeff)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": i, "j": j, "num": str(c.numerator), "den": str(c.denominator)}
                for (i, j), c in ((m, self._terms[m]) for m in self.sorted_monomials())
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "BivariatePoly":
        return cls({(t["i"], t["j"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]})


def _mono_str(m: Monomial) -> str:
    i, j = m
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


X = BivariatePoly.x()
Y = BivariatePoly.y()


def _content(coeffs: Sequence[UniPoly]) -> UniPoly:
    g = UniPoly()
    for c in coeffs:
        g = uni_gcd(g, c)
        if g.degree == 0:
            break
    return g


def _trim(coeffs: List[UniPoly]) -> List[UniPoly]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _primitive(coeffs: List[UniPoly]) -> List[UniPoly]:
    c = _content(coeffs)
    if c.degree <= 0:
        return coeffs
    return [a.exact_div(c) for a in coeffs]


def _prem(f: List[UniPoly], g: List[UniPoly]) -> List[UniPoly]:
    r = list(f)
    lcg = g[-1]
    while len(r) >= len(g) and r:
        lcr = r[-1]
        shift = len(r) - len(g)
        r = [a * lcg for a in r]
        for k, b in enumerate(g):
            r[k + shift] = r[k + shift] - lcr * b
        r = _trim(r)
    return r


def poly_gcd(f: BivariatePoly, g: BivariatePoly) -> BivariatePoly:
    """Greatest common divisor in Q[x, y], normalized to leading coefficient 1.

    Primitive pseudo-remainder sequence in y over Q[x].
    """
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    if f.is_constant() or g.is_constant():
        return BivariatePoly.const(1)
    F = f.y_coefficients()
    G = g.y_coefficients()
    cf, cg = _content(F), _content(G)
    c = uni_gcd(cf, cg)
    F = [a.exact_div(cf) for a in F]
    G = [a.exact_div(cg) for a in G]
    if len(F) < len(G):
        F, G = G, F
    while G:
        if len(G) == 1:
            # primitive and free of y: a unit
            F = [UniPoly.const(1)]
            break
        R = _prem(F, G)
        F, G = G, (_primitive(R) if R else R)
    F = _primitive(F)
    return (BivariatePoly.from_y_coefficients(F) * c.to_bivariate()).normalized()


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction2:
    """num/den with gcd cancelled and den scaled to leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, _canonical: bool = False):
        num = BivariatePoly.coerce(num)
        den = BivariatePoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if not _canonical:
            num, den = _canonical_pair(num, den)
        self.num: BivariatePoly = num
        self.den: BivariatePoly = den

    @staticmethod
    def coerce(value) -> "RationalFunction2":
        if isinstance(value, RationalFunction2):
            return value
        return RationalFunction2(BivariatePoly.coerce(value), 1, _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> BivariatePoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num.scale(1 / self.den.constant_value())

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, BivariatePoly, UniPoly)):
            other = RationalFunction2.coerce(BivariatePoly.coerce(other))
        if not isinstance(other, RationalFunction2):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction2({self})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.as_polynomial())
        return f"({self.num})/({self.den})"

    def __add__(self, other) -> "RationalFunction2":
        o = RationalFunction2.coerce(other)
        if self.den == o.den:
            return RationalFunction2(self.num + o.num, self.den)
        return RationalFunction2(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction2":
        return RationalFunction2(-self.num, self.den, _canonical=True)

    def __sub__(self, other) -> "RationalFunction2":
        return self + (-RationalFunction2.coerce(other))

    def __rsub__(self, other) -> "RationalFunction2":
        return RationalFunction2.coerce(other) - self

    def __mul__(self, other) -> "RationalFunction2":
        o = RationalFunction2.coerce(other)
        return RationalFunction2(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction2":
        o = RationalFunction2.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return RationalFunction2(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalFunction2":
        return RationalFunction2.coerce(other) / self

    def __pow__(self, k: int) -> "RationalFunction2":
        if k < 0:
            return RationalFunction2(self.den ** (-k), self.num ** (-k))
        return RationalFunction2(self.num ** k, self.den ** k, _canonical=True)

    def partial(self, var: str) -> "RationalFunction2":
        n, d = self.num, self.den
        return RationalFunction2(n.partial(var) * d - n * d.partial(var), d * d)

    def __call__(self, x, y):
        return self.num(x, y) / self.den(x, y)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _canonical_pair(num: BivariatePoly, den: BivariatePoly) -> Tuple[BivariatePoly, BivariatePoly]:
    if num.is_zero():
        return num, BivariatePoly.const(1)
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    lc = den.leading_coeff
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    return num, den


def canonicalize(r: RationalFunction2) -> RationalFunction2:
    """Idempotent; every RationalFunction2 is already stored this way."""
    return RationalFunction2(r.num, r.den)


def rf(num, den=1) -> RationalFunction2:
    return RationalFunction2(num, den)


# ---------------------------------------------------------------------------
# operators on polynomials, rational functions, 2x2 matrices and 2-vectors
# ---------------------------------------------------------------------------

Entry = Union[BivariatePoly, RationalFunction2]
Vec2 = Tuple[Entry, Entry]
Mat2 = Tuple[Vec2, Vec2]


def partial(p, var: str):
    """Exact partial derivative of a polynomial or rational function."""
    if isinstance(p, (int, Fraction)):
        return BivariatePoly()
    return p.partial(var)


def divergence(row: Sequence) -> RationalFunction2:
    """d/dx of the first entry plus d/dy of the second."""
    return RationalFunction2.coerce(partial(row[0], "x")) + RationalFunction2.coerce(partial(row[1], "y"))


def mat2(a, b, c, d) -> Mat2:
    return ((a, b), (c, d))


def mat_rf(M) -> Mat2:
    return tuple(tuple(RationalFunction2.coerce(e) for e in row) for row in M)  # type: ignore[return-value]


def mat_mul(A, B) -> Mat2:
    A, B = mat_rf(A), mat_rf(B)
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def mat_vec(A, v) -> Vec2:
    A = mat_rf(A)
    v = tuple(RationalFunction2.coerce(e) for e in v)
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


def transpose(A) -> Mat2:
    return ((A[0][0], A[1][0]), (A[0][1], A[1][1]))


def mat_det(A) -> RationalFunction2:
    A = mat_rf(A)
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_is_symmetric(M) -> bool:
    """True iff the off-diagonal entries agree as rational functions."""
    return (RationalFunction2.coerce(M[0][1]) - RationalFunction2.coerce(M[1][0])).is_zero()


def poly_entries(M) -> Tuple:
    """Convert a nested tuple of rational functions to polynomials (or raise)."""
    if isinstance(M, (tuple, list)):
        return tuple(poly_entries(e) for e in M)
    return RationalFunction2.coerce(M).as_polynomial()


def lcm(a: BivariatePoly, b: BivariatePoly) -> BivariatePoly:
    return (a * b).exact_div(poly_gcd(a, b)).normalized()
