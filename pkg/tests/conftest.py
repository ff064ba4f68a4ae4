import random

import pytest
from hypothesis import strategies as st

from mptd.parse import parse_poly
from mptd.polyring import Poly, VarOrder

XY = VarOrder(["x", "y"])
XYZ = VarOrder(["x", "y", "z"])

GOLDEN2_F = "2*y^4 - 3*y^2*x + x^2 - 2*x^3 + x^4"
GOLDEN3_F1 = "x^2 + y^2 + z^3 - 1"
GOLDEN3_F2 = "x*z^2 - z*y + 1"
GOLDEN3_H1 = "x^6 + 3*x^5 + 2*x^4 + x^2 + x + 1"
GOLDEN3_H2 = "y - x^4 - x^3 + x^2"


def P(text, order=XY):
    return parse_poly(text, order)


def dense(rng: random.Random, degree: int, order=XY, bound: int = 100) -> Poly:
    """Dense bivariate polynomial of total degree ``degree`` with coefficients in [-bound, bound]."""
    while True:
        terms = {(i, j): rng.randint(-bound, bound) for i in range(degree + 1) for j in range(degree + 1 - i)}
        p = Poly(order, {e: c for e, c in terms.items() if c})
        if p.total_degree() == degree and p.degree(1) > 0:
            return p


def polys(order=XY, max_deg=3, max_terms=6, bound=20):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in order.names])
    coeffs = st.integers(-bound, bound).filter(bool)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: Poly(order, t))


@pytest.fixture
def golden2():
    f = P(GOLDEN2_F)
    return f, f.diff("y")


# lines recorded by the acceptance suite, printed once at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
