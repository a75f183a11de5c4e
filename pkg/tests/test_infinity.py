import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from trisector.family import CertificationError, ParameterPoint, build_trisector, projective_closure
from trisector.groebner import projective_degree
from trisector.infinity import (
    LOCAL,
    NO_REAL_BRANCH,
    TWO_REAL_CROSSINGS,
    WALL_DEGENERATE,
    TruncatedSeries,
    asymptotic_form,
    classify_branches,
    direction_discriminant,
    infinity_points,
    local_equation,
    slope_g,
    slope_q,
    slope_reduction,
    solve_W_series,
    tangent_form,
)
from trisector.polyring import Polynomial, UnivariatePoly, rational, sylvester_resultant

HALF = rational(1) / 2


def random_admissible(rng):
    while True:
        k = rational(rng.randint(-40, 40)) / rng.randint(1, 12)
        if k not in (0, 1):
            break
    R = rational(rng.randint(1, 30)) / rng.randint(1, 12)
    t = rational(rng.choice([-1, 1]) * rng.randint(1, 30)) / rng.randint(1, 12)
    return ParameterPoint(k, R, t)


def sympy_slope_expansion(params: ParameterPoint, order: int = 8):
    """Coefficients of X^j in F2h(X, uX, 1, ω) computed by sympy alone."""
    X, u, W = sympy.symbols("X u W")
    q = lambda v: sympy.Rational(int(v.numerator), int(v.denominator))
    k, R, c, s = q(params.k), q(params.R), q(params.c), q(params.s)
    Y = u * X
    # quadric in the chart Z = 1: Y² − (Xs − Yc)² + 2W − W² = 0
    omega = sympy.Integer(0)
    Q = sympy.expand(((X * s - Y * c) ** 2 - Y ** 2) / 2)
    for _ in range(order):
        omega = sympy.expand(Q + omega ** 2 / 2)
        omega = sum(omega.coeff(X, j) * X ** j for j in range(order))
    F2 = (X ** 2 - 2 * k * W + (R ** 2 + k ** 2) * W ** 2) ** 2 - 4 * R ** 2 * W ** 2 * (X ** 2 + Y ** 2)
    G = sympy.expand(F2.subs(W, omega))
    return [sympy.expand(G.coeff(X, j)) for j in range(order - 1)], u, (k, R, c, s)


def upoly_expr(f: UnivariatePoly, u):
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * u ** i for i, c in enumerate(f.coeffs))


def test_series_arithmetic_truncates():
    X, Y = LOCAL.gens()
    a = TruncatedSeries(1 + X, 3)
    b = TruncatedSeries(1 - X + X ** 2, 3)
    assert (a * b).poly == Polynomial.constant(LOCAL, 1)
    with pytest.raises(ValueError):
        TruncatedSeries(X, 0)


@pytest.mark.parametrize("k, R, t", [(2, 1, 1), (HALF, 1, -1), (-3, 2, rational(1) / 3)])
def test_w_series_solves_quadric(k, R, t):
    p = ParameterPoint(k, R, t)
    omega = solve_W_series(p, 12)
    assert omega.lowest_degree() == 2
    # odd total degrees never occur since the quadric is even in (X, Y)
    assert all(sum(m) % 2 == 0 for m in omega.poly.terms_dict)


def test_discriminant_identity_seeded():
    rng = random.Random(0)
    for _ in range(25):
        p = random_admissible(rng)
        form = tangent_form(p)
        assert form.form == asymptotic_form(p)
        s = p.s
        assert form.discriminant == 4 * p.k * s * s * (p.k - 1) == direction_discriminant(p.k, p.t)


@given(
    st.fractions(min_value=-20, max_value=20, max_denominator=10).filter(lambda k: k not in (0, 1)),
    st.fractions(min_value=-20, max_value=20, max_denominator=10).filter(lambda t: t != 0),
)
def test_asymptotic_form_discriminant_closed(k, t):
    p = ParameterPoint(k, 1, t)
    E = asymptotic_form(p)
    a, b, c = E.coefficient((2, 0)), E.coefficient((1, 1)), E.coefficient((0, 2))
    assert b * b - 4 * a * c == direction_discriminant(k, t)


@pytest.mark.parametrize("k, R, t", [(2, 1, 1), (-1, 1, 1), (HALF, 1, 1), (3, rational(2) / 3, rational(-5) / 2)])
def test_slope_expansion_against_sympy(k, R, t):
    p = ParameterPoint(k, R, t)
    coeffs, u, (ks, Rs, cs, ss) = sympy_slope_expansion(p)
    red = slope_reduction(p)
    assert all(coeffs[j] == 0 for j in (0, 1, 2, 3, 5))
    assert sympy.expand(coeffs[4] - upoly_expr(red.g, u) ** 2) == 0
    assert sympy.expand(coeffs[6] - upoly_expr(red.H0, u)) == 0
    # closed form of H(0, u), including the −k from Q²/2 in ω
    g = upoly_expr(slope_g(p), u)
    q = upoly_expr(slope_q(p), u)
    closed = 2 * (Rs ** 2 + ks ** 2 - ks) * g * q ** 2 - 4 * Rs ** 2 * (1 + u ** 2) * q ** 2
    assert sympy.expand(coeffs[6] - closed) == 0
    # the form without −k differs by 2k·g·q², which vanishes only modulo g
    naive = 2 * (Rs ** 2 + ks ** 2) * g * q ** 2 - 4 * Rs ** 2 * (1 + u ** 2) * q ** 2
    assert sympy.expand(coeffs[6] - naive) != 0
    assert sympy.rem(sympy.expand(coeffs[6] - naive), g, u) == 0


def test_crossing_classification_values():
    c = classify_branches(ParameterPoint(2, 1, 1))
    assert c.kind == TWO_REAL_CROSSINGS
    assert c.delta == 8 and c.real_slopes == 2
    assert c.lambdas == (rational(3) / 64, rational(3) / 64)
    assert c.lambda_positive and c.h0_reduction_ok
    assert c.u_squared == rational(1) / 2
    assert c.res_g_dg != 0 and c.res_g_q != 0
    c2 = classify_branches(ParameterPoint(-1, 1, 1))
    assert c2.kind == TWO_REAL_CROSSINGS
    assert c2.lambdas == (rational(3) / 8, rational(3) / 8)


def test_lambda_against_sympy_roots():
    u = sympy.Symbol("u")
    for k, R, t in [(2, 1, 1), (-1, 1, 1), (3, 2, rational(1) / 2)]:
        p = ParameterPoint(k, R, t)
        c = classify_branches(p)
        g = upoly_expr(slope_g(p), u)
        q = upoly_expr(slope_q(p), u)
        r0, r1 = (sympy.Rational(int(x.numerator), int(x.denominator)) for x in c.lambda_mod_g)
        Rs = sympy.Rational(int(p.R.numerator), int(p.R.denominator))
        for root in sympy.solve(g, u):
            lam = sympy.nsimplify(4 * Rs ** 2 * (1 + root ** 2) * q.subs(u, root) ** 2 / sympy.diff(g, u).subs(u, root) ** 2)
            assert sympy.simplify(lam - (r0 + r1 * root)) == 0
            assert lam.evalf() > 0


def test_no_branch_classification():
    for t in (1, -1):
        c = classify_branches(ParameterPoint(HALF, 1, t))
        assert c.kind == NO_REAL_BRANCH
        assert c.min_g == HALF and c.g_squared_lower_bound == rational(1) / 4
        assert c.real_slopes == 0


def test_resultant_g_q_at_crossing_witness():
    p = ParameterPoint(2, 1, 1)
    assert sylvester_resultant(slope_g(p), slope_q(p)) == rational(1) / 4


def test_wall_points_degenerate():
    assert classify_branches(ParameterPoint(1, 1, 1)).kind == WALL_DEGENERATE
    assert classify_branches(ParameterPoint(0, 1, 1)).kind == WALL_DEGENERATE
    with pytest.raises(ValueError):
        tangent_form(ParameterPoint(0, 1, 1))


def test_classification_matches_discriminant_sign():
    rng = random.Random(5)
    for _ in range(15):
        p = random_admissible(rng)
        kind = classify_branches(p).kind
        assert kind == (TWO_REAL_CROSSINGS if direction_discriminant(p.k, p.t) > 0 else NO_REAL_BRANCH)


def test_slope_reduction_order_floor():
    with pytest.raises(ValueError):
        slope_reduction(ParameterPoint(2, 1, 1), order=6)


def test_local_equation_initial_form_is_square():
    p = ParameterPoint(2, 1, 1)
    G = local_equation(p)
    assert G.lowest_degree() == 4
    assert G.homogeneous_part(4) == asymptotic_form(p) ** 2


@pytest.mark.parametrize("k", [-1, HALF, 2])
def test_points_at_infinity(k):
    p = ParameterPoint(k, 1, 1)
    closure = projective_closure(build_trisector(p))
    rep = infinity_points(p, closure=closure)
    assert rep.unique_point and rep.point == (0, 0, 1, 0)
    assert rep.x4_in_ideal
    assert rep.scheme_degree == 8
    assert projective_degree(closure, seed=0) == 8


def test_certification_error_on_bad_series():
    # order below the quadric's own degree cannot be certified
    with pytest.raises(ValueError):
        solve_W_series(ParameterPoint(2, 1, 1), order=2)
    assert issubclass(CertificationError, RuntimeError)
