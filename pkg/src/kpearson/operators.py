"""Second-order operators from Pearson pairs and their action on the Koornwinder basis.

L = phi11 d_xx + 2 phi12 d_xy + phi22 d_yy + psi1 d_x + psi2 d_y
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from .algebra import BivariatePoly, fraction_str
from .koornwinder import KoornwinderSystem, basis, build_polynomial
from .pearson import PearsonPair

Index = Tuple[int, int]
Formula = Callable[[int, int], Dict[Index, Fraction]]


class OperatorError(ValueError):
    pass


@dataclass(frozen=True)
class DiffOperator2:
    c_xx: BivariatePoly
    c_xy: BivariatePoly
    c_yy: BivariatePoly
    c_x: BivariatePoly
    c_y: BivariatePoly

    @property
    def s_value(self) -> int:
        return max(max(c.degree for c in (self.c_xx, self.c_xy, self.c_yy)) - 2,
                   max(c.degree for c in (self.c_x, self.c_y)) - 1)

    def describe(self) -> str:
        parts = []
        for c, d in ((self.c_xx, "d_xx"), (self.c_xy * 2, "d_xy"), (self.c_yy, "d_yy"),
                     (self.c_x, "d_x"), (self.c_y, "d_y")):
            if not c.is_zero():
                parts.append(f"[{c}] {d}")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"c_xx": str(self.c_xx), "c_xy": str(self.c_xy), "c_yy": str(self.c_yy),
                "c_x": str(self.c_x), "c_y": str(self.c_y)}


def build_operator(P: PearsonPair) -> DiffOperator2:
    if not P.verified:
        raise OperatorError("operator requires a verified Pearson pair")
    return DiffOperator2(P.phi11, P.phi12, P.phi22, P.psi1, P.psi2)


def apply(L: DiffOperator2, p: BivariatePoly) -> BivariatePoly:
    px, py = p.partial("x"), p.partial("y")
    return (L.c_xx * px.partial("x") + L.c_xy * px.partial("y") * 2 + L.c_yy * py.partial("y")
            + L.c_x * px + L.c_y * py)


def expand_in_basis(sys: KoornwinderSystem, q: BivariatePoly, N: Optional[int] = None) -> Dict[Index, Fraction]:
    """Coefficients of q in {P_{n,m}} by elimination of leading monomials."""
    if N is None:
        N = max(q.degree, 0)
    if q.degree > N:
        raise OperatorError(f"deg q = {q.degree} exceeds N = {N}")
    out: Dict[Index, Fraction] = {}
    r = q
    while not r.is_zero():
        i, j = r.leading_monomial
        n, m = i + j, j
        if n > N:
            raise OperatorError("internal error: basis incomplete")
        P = build_polynomial(sys, n, m)
        if P.leading_monomial != (i, j):
            raise OperatorError(f"internal error: P_{n},{m} does not lead with x^{i} y^{j}")
        c = r.leading_coeff / P.leading_coeff
        out[(n, m)] = c
        r = r - P * c
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionReport:
    index: Index
    coefficients: Dict[Index, Fraction]
    classification: str

    @property
    def band(self) -> Tuple[int, ...]:
        return tuple(sorted({k[0] for k in self.coefficients}))

    @property
    def eigenvalue(self) -> Optional[Fraction]:
        if self.classification == "eigenfunction":
            return self.coefficients.get(self.index, Fraction(0))
        return None

    def to_json(self) -> dict:
        return {
            "n": self.index[0], "m": self.index[1],
            "coefficients": [{"n": k[0], "m": k[1], "value": fraction_str(v)}
                             for k, v in self.coefficients.items()],
            "band": list(self.band),
            "classification": self.classification,
        }


def _classify_one(index: Index, coeffs: Dict[Index, Fraction]) -> str:
    n = index[0]
    if set(coeffs) <= {index}:
        return "eigenfunction"
    if all(k[0] == n for k in coeffs):
        return "classical"
    s = max(abs(k[0] - n) for k in coeffs)
    return f"semiclassical({s})"


@dataclass(frozen=True)
class Classification:
    kind: str
    reports: Tuple[ExpansionReport, ...]
    empirical_s: int
    s_value: int
    formula: str = "empirical"
    formula_mismatches: Tuple[Index, ...] = ()

    @property
    def is_classical(self) -> bool:
        return self.kind in ("classical", "krall_sheffer")

    @property
    def all_eigenfunctions(self) -> bool:
        return all(r.classification == "eigenfunction" for r in self.reports)

    @property
    def s_disagreement(self) -> bool:
        return self.empirical_s != self.s_value

    def eigenvalues(self) -> Dict[Index, Fraction]:
        return {r.index: r.eigenvalue for r in self.reports if r.eigenvalue is not None}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "empirical_s": self.empirical_s,
            "s_value": self.s_value,
            "s_disagreement": self.s_disagreement,
            "formula": self.formula,
            "formula_mismatches": [list(i) for i in self.formula_mismatches],
            "reports": [r.to_json() for r in self.reports],
        }


def classify(sys: KoornwinderSystem, L: DiffOperator2, nmax: int,
             formulas: Sequence[Tuple[str, Formula]] = ()) -> Classification:
    """Expand L[P_{n,m}] for all n <= nmax and label the family.

    krall_sheffer: every P_{n,m} is an eigenfunction and lambda depends on n only;
    classical: L maps each V_n into itself; otherwise semiclassical with the
    widest observed degree shift.  ``formulas`` are (name, f) with f(n, m)
    giving the expected coefficient map; the first that matches every (n, m)
    is reported.
    """
    if nmax < 2:
        raise OperatorError("classification needs nmax >= 2")
    grow = max(L.s_value, 0)
    basis(sys, nmax + grow)
    reports = []
    for n in range(nmax + 1):
        for m in range(n + 1):
            img = apply(L, build_polynomial(sys, n, m))
            coeffs = expand_in_basis(sys, img, n + grow)
            reports.append(ExpansionReport((n, m), coeffs, _classify_one((n, m), coeffs)))
    s_emp = max((abs(k[0] - r.index[0]) for r in reports for k in r.coefficients), default=0)
    if s_emp > 0:
        kind = "semiclassical"
    elif all(r.classification == "eigenfunction" for r in reports):
        lam: Dict[int, set] = {}
        for r in reports:
            lam.setdefault(r.index[0], set()).add(r.eigenvalue)
        kind = "krall_sheffer" if all(len(v) == 1 for v in lam.values()) else "classical"
    else:
        kind = "classical"
    name, bad = "empirical", ()
    for fname, f in formulas:
        miss = tuple(r.index for r in reports if not _same(r.coefficients, f(*r.index)))
        if not miss:
            name, bad = fname, ()
            break
        if not bad:
            bad = miss
    return Classification(kind, tuple(reports), s_emp, L.s_value, name, bad if name == "empirical" else ())


def _same(got: Dict[Index, Fraction], want: Dict[Index, Fraction]) -> bool:
    want = {k: Fraction(v) for k, v in want.items() if v}
    return {k: v for k, v in got.items() if v} == want
