from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from kpearson.algebra import BivariatePoly
from kpearson.families import get_family, resolve_params, system

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def family_system(name, **params):
    fam = get_family(name)
    p = resolve_params(fam, params)
    return fam, p, system(fam, p)


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
exponents = st.fractions(min_value=Fraction(-5, 6), max_value=4, max_denominator=6)


@st.composite
def bivariate_polys(draw, max_deg=3, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i))
        terms[(i, j)] = draw(small_fractions)
    return BivariatePoly(terms)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def rec(k, passed, detail=""):
        line = f"CRITERION {k}: {'PASS' if passed else 'FAIL'}" + (f"  {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return rec


@pytest.fixture(autouse=True)
def working_precision():
    # library results carry guard digits; compare them at more than double precision
    import mpmath
    with mpmath.workdps(40):
        yield
