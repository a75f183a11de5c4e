import random

import pytest
import sympy
from hypothesis import settings

from trisector.polyring import Polynomial, rational

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")


def to_sympy(p: Polynomial):
    """Independent re-encoding of a Polynomial as a sympy expression."""
    syms = sympy.symbols(p.ctx.variables)
    expr = sympy.Integer(0)
    for mono, c in p.terms():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(syms, mono):
            term *= s ** e
        expr += term
    return expr


def random_polynomial(rng: random.Random, ctx, nterms=4, max_deg=3, coeff=5) -> Polynomial:
    p = Polynomial.zero(ctx)
    for _ in range(nterms):
        exps = [rng.randint(0, max_deg) for _ in ctx.variables]
        c = rational(rng.randint(-coeff, coeff)) / rng.randint(1, 3)
        p = p + Polynomial.monomial(ctx, exps, c)
    return p


@pytest.fixture
def rng():
    return random.Random(20240607)


ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
