"""Behaviour of the curve at its point at infinity.

The only point at infinity of the projective closure is ``[0:0:1:0]``.  In
the chart ``Z = 1`` the quadric ``F1h`` is smooth there and can be solved
for ``W`` as a power series ``ω(X, Y)``; substituting into ``F2h`` gives a
local plane equation whose lowest-order part is the square of a binary
quadratic form ``E``.  The slope coordinate ``Y = uX`` separates the two
tangent directions, and the sign of the next term decides whether real
branches pass through them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .family import PROJECTIVE, CertificationError, ParameterPoint, build_trisector, projective_closure
from .groebner import GREVLEX, Ideal, in_radical, is_zero_dimensional
from .polyring import (
    Polynomial,
    Rational,
    UnivariatePoly,
    VarContext,
    exact_sqrt,
    rational,
    sturm_real_root_count,
    sylvester_resultant,
    upoly_inverse_mod,
)

LOCAL = VarContext(("X", "Y"))
LOCAL_W = VarContext(("X", "Y", "W"))
SLOPE = VarContext(("X", "u"))
SLOPE_W = VarContext(("X", "u", "W"))
DEFAULT_SERIES_ORDER = 10

TWO_REAL_CROSSINGS = "two_real_crossings"
NO_REAL_BRANCH = "no_real_branch"
WALL_DEGENERATE = "wall_degenerate"


def _truncate(p: Polynomial, order: int, weights=None) -> Polynomial:
    """Drop terms of (weighted) degree ≥ order."""
    if weights is None:
        keep = {m: c for m, c in p.terms_dict.items() if sum(m) < order}
    else:
        keep = {m: c for m, c in p.terms_dict.items() if sum(w * e for w, e in zip(weights, m)) < order}
    return Polynomial._raw(p.ctx, keep)


class TruncatedSeries:
    """A power series in a polynomial ring known modulo terms of degree ≥ order.

    ``weights`` gives the degree of each variable (default all 1), so the
    slope chart can truncate in ``X`` alone with weights ``(1, 0)``.
    """

    __slots__ = ("poly", "order", "weights")

    def __init__(self, poly: Polynomial, order: int, weights=None):
        if order < 1:
            raise ValueError("series order must be positive")
        self.weights = tuple(weights) if weights is not None else None
        self.order = order
        self.poly = _truncate(poly, order, self.weights)

    @property
    def ctx(self) -> VarContext:
        return self.poly.ctx

    def _like(self, p: Polynomial, order=None) -> "TruncatedSeries":
        return TruncatedSeries(p, self.order if order is None else order, self.weights)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other.poly, min(self.order, other.order)
        if isinstance(other, Polynomial):
            return other, self.order
        return Polynomial.constant(self.ctx, other), self.order

    def __add__(self, other):
        p, o = self._coerce(other)
        return self._like(self.poly + p, o)

    __radd__ = __add__

    def __sub__(self, other):
        p, o = self._coerce(other)
        return self._like(self.poly - p, o)

    def __neg__(self):
        return self._like(-self.poly)

    def __mul__(self, other):
        p, o = self._coerce(other)
        return self._like(_truncated_product(self.poly, p, o, self.weights), o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self._like(Polynomial.constant(self.ctx, 1))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        o = min(self.order, other.order)
        return _truncate(self.poly, o, self.weights) == _truncate(other.poly, o, self.weights)

    def __hash__(self):
        return hash((self.poly, self.order))

    def homogeneous_part(self, d: int) -> Polynomial:
        if d >= self.order:
            raise ValueError("degree %d is beyond the known order %d" % (d, self.order))
        return self.poly.homogeneous_part(d)

    def lowest_degree(self) -> int | None:
        return None if self.poly.is_zero() else self.poly.lowest_degree()

    def __repr__(self) -> str:
        return "%s + O(%d)" % (self.poly, self.order)


def _weight(m, weights):
    return sum(m) if weights is None else sum(w * e for w, e in zip(weights, m))


def _truncated_product(a: Polynomial, b: Polynomial, order: int, weights) -> Polynomial:
    res: dict = {}
    bt = [(m, c, _weight(m, weights)) for m, c in b.terms_dict.items()]
    for ma, ca in a.terms_dict.items():
        wa = _weight(ma, weights)
        if wa >= order:
            continue
        for mb, cb, wb in bt:
            if wa + wb >= order:
                continue
            m = tuple(x + y for x, y in zip(ma, mb))
            v = res.get(m)
            v = ca * cb if v is None else v + ca * cb
            if v:
                res[m] = v
            else:
                del res[m]
    return Polynomial._raw(a.ctx, res)


def compose_in_w(p: Polynomial, omega: TruncatedSeries) -> TruncatedSeries:
    """p(X, Y, ω) for p in ``LOCAL_W`` (or a ring ending in W), truncated."""
    ctx = omega.ctx
    coeffs: dict = {}
    for m, c in p.terms_dict.items():
        coeffs.setdefault(m[-1], {})[m[:-1]] = c
    result = TruncatedSeries(Polynomial.zero(ctx), omega.order, omega.weights)
    power = TruncatedSeries(Polynomial.constant(ctx, 1), omega.order, omega.weights)
    for j in range(max(coeffs) + 1 if coeffs else 0):
        if j in coeffs:
            result = result + power * Polynomial(ctx, coeffs[j])
        power = power * omega
    return result


# ---------------------------------------------------------------------------
# Local parametrization of the quadric
# ---------------------------------------------------------------------------


def local_equations(params: ParameterPoint) -> tuple:
    """F1h and F2h in the chart Z = 1, as polynomials in X, Y, W."""
    system = build_trisector(params)
    return tuple(p.dehomogenize("Z").to_context(LOCAL_W) for p in (system.F1h, system.F2h))


def quadratic_part(params: ParameterPoint) -> Polynomial:
    """Q = ½(s²X² − 2scXY − s²Y²), the lowest term of ω."""
    c, s = params.c, params.s
    X, Y = LOCAL.gens()
    return (s ** 2 * X ** 2 - 2 * s * c * X * Y - s ** 2 * Y ** 2) / 2


def solve_W_series(params: ParameterPoint, order: int = DEFAULT_SERIES_ORDER) -> TruncatedSeries:
    """Power series ω(X, Y) with F1h(X, Y, 1, ω) = 0, known modulo degree ``order``.

    In the chart Z = 1 the quadric reads ``W = Q + W²/2``; fixed-point
    iteration from ω = 0 gains two degrees per step.
    """
    if order < 3:
        raise ValueError("series order must be at least 3")
    Q = TruncatedSeries(quadratic_part(params), order)
    omega = TruncatedSeries(Polynomial.zero(LOCAL), order)
    for _ in range(order):
        nxt = Q + omega * omega * (rational(1) / 2)
        if nxt == omega:
            break
        omega = nxt
    F1_local, _ = local_equations(params)
    residual = compose_in_w(F1_local, omega)
    if not residual.poly.is_zero():
        raise CertificationError("W-series does not solve the quadric to order %d" % order)
    return omega


def local_equation(params: ParameterPoint, order: int = DEFAULT_SERIES_ORDER) -> TruncatedSeries:
    """G(X, Y) = F2h(X, Y, 1, ω(X, Y)) truncated at ``order``."""
    omega = solve_W_series(params, order)
    _, F2_local = local_equations(params)
    return compose_in_w(F2_local, omega)


# ---------------------------------------------------------------------------
# Tangent form
# ---------------------------------------------------------------------------


def asymptotic_form(params: ParameterPoint) -> Polynomial:
    """E = (1 − ks²)X² + 2ksc·XY + ks²Y²."""
    k, c, s = params.k, params.c, params.s
    X, Y = LOCAL.gens()
    return (1 - k * s ** 2) * X ** 2 + 2 * k * s * c * X * Y + k * s ** 2 * Y ** 2


def direction_discriminant(k, t) -> Rational:
    """Closed form 4ks²(k − 1) of the tangent-form discriminant."""
    k = rational(k)
    s = 2 * rational(t) / (1 + rational(t) ** 2)
    return 4 * k * s ** 2 * (k - 1)


@dataclass(frozen=True)
class TangentForm:
    """The quadratic form whose square is the quartic tangent cone."""

    a: Rational  # coefficient of X²
    b: Rational  # coefficient of XY
    c: Rational  # coefficient of Y²
    initial_form: Polynomial
    order: int

    @property
    def form(self) -> Polynomial:
        X, Y = LOCAL.gens()
        return self.a * X ** 2 + self.b * X * Y + self.c * Y ** 2

    @property
    def discriminant(self) -> Rational:
        return self.b ** 2 - 4 * self.a * self.c


def tangent_form(params: ParameterPoint, order: int = DEFAULT_SERIES_ORDER) -> TangentForm:
    """Recover E from the initial form of the local equation.

    The initial form is dehomogenized at X = 1 and its univariate square
    root taken exactly; the result is compared with the closed form and the
    computation repeated at ``order + 2`` for stability.
    """
    if not params.admissible:
        raise ValueError("tangent form needs k different from 0 and h")
    G = local_equation(params, order)
    d = G.lowest_degree()
    if d != 4:
        raise CertificationError("initial form has degree %s, expected 4" % d)
    init = G.homogeneous_part(4)
    root = exact_sqrt(init.dehomogenize("X").to_univariate("Y"))
    if root is None or root.degree != 2:
        raise CertificationError("initial form is not the square of a quadratic form")
    E = asymptotic_form(params)
    # fix the sign of the square root by the X² coefficient of E
    target_a = E.coefficient((2, 0))
    if root.coeffs[0] == -target_a and target_a != 0:
        root = -root
    a, b, c = root.coeffs[0], root.coeffs[1], root.coeffs[2]
    X, Y = LOCAL.gens()
    recovered = a * X ** 2 + b * X * Y + c * Y ** 2
    if recovered != E or recovered ** 2 != init:
        raise CertificationError("tangent form disagrees with the closed form")
    again = local_equation(params, order + 2)
    if again.homogeneous_part(4) != init:
        raise CertificationError("initial form changed at higher series order")
    return TangentForm(a, b, c, init, order)


# ---------------------------------------------------------------------------
# Slope coordinates
# ---------------------------------------------------------------------------


def _upoly(coeffs) -> UnivariatePoly:
    return UnivariatePoly([rational(c) for c in coeffs])


def slope_g(params: ParameterPoint) -> UnivariatePoly:
    k, c, s = params.k, params.c, params.s
    return _upoly([1 - k * s ** 2, 2 * k * s * c, k * s ** 2])


def slope_q(params: ParameterPoint) -> UnivariatePoly:
    c, s = params.c, params.s
    return _upoly([s ** 2 / 2, -s * c, -(s ** 2) / 2])


@dataclass(frozen=True)
class SlopeReduction:
    g: UnivariatePoly
    q: UnivariatePoly
    H0: UnivariatePoly
    order: int


def slope_reduction(params: ParameterPoint, order: int = DEFAULT_SERIES_ORDER) -> SlopeReduction:
    """Expand the local equation on Y = uX as X⁴(g(u)² + X²·H(X, u)).

    Returns g and H(0, u) computed from the expansion, after checking them
    exactly against g_k and 2(R² + k² − k)g·q² − 4R²(1 + u²)q².  The −k
    comes from the degree-four term Q²/2 of ω; modulo g it drops out.
    """
    if order < 8:
        raise ValueError("slope reduction needs series order at least 8")
    omega = solve_W_series(params, order)
    X, u = SLOPE.gens()
    onto = {"X": X, "Y": u * X}
    w_slope = TruncatedSeries(omega.poly.substitute(onto, target=SLOPE), order, (1, 0))
    _, F2_local = local_equations(params)
    F2_slope = F2_local.substitute({"X": SLOPE_W.gen("X"), "Y": SLOPE_W.gen("u") * SLOPE_W.gen("X")}, target=SLOPE_W)
    G = compose_in_w(F2_slope, w_slope).poly
    by_power: dict = {}
    for m, c in G.terms_dict.items():
        by_power.setdefault(m[0], {})[m[1]] = c

    def coeff_poly(p: int) -> UnivariatePoly:
        entries = by_power.get(p, {})
        n = max(entries) + 1 if entries else 0
        return UnivariatePoly([entries.get(i, 0) for i in range(n)])

    for low in (0, 1, 2, 3, 5):
        if not coeff_poly(low).is_zero():
            raise CertificationError("unexpected X^%d term in slope expansion" % low)
    g2 = coeff_poly(4)
    H0 = coeff_poly(6)
    g = slope_g(params)
    q = slope_q(params)
    k, R = params.k, params.R
    if g2 != g * g or exact_sqrt(g2) not in (g, -g):
        raise CertificationError("X^4 coefficient is not g_k squared")
    closed = _upoly([2 * (R ** 2 + k ** 2 - k)]) * g * q * q - _upoly([4 * R ** 2, 0, 4 * R ** 2]) * q * q
    if H0 != closed:
        raise CertificationError("H(0, u) disagrees with the closed form")
    return SlopeReduction(g, q, H0, order)


# ---------------------------------------------------------------------------
# Branch classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BranchClassification:
    kind: str
    delta: Rational
    real_slopes: int | None = None
    res_g_dg: Rational | None = None
    res_g_q: Rational | None = None
    h0_reduction_ok: bool | None = None
    lambda_mod_g: tuple | None = None  # (r0, r1): λ = r0 + r1·u on g = 0
    u_squared: Rational | None = None
    lambdas: tuple | None = None
    min_g: Rational | None = None
    g_squared_lower_bound: Rational | None = None
    lambda_positive: bool | None = None


def _mod(f: UnivariatePoly, m: UnivariatePoly) -> UnivariatePoly:
    return f % m


def _linear_coeffs(f: UnivariatePoly) -> tuple:
    c = list(f.coeffs) + [rational(0), rational(0)]
    return c[0], c[1]


def _positive_at_roots(lin: tuple, g: UnivariatePoly) -> bool:
    """Whether r0 + r1·u > 0 at both real roots of the quadratic g.

    The roots are -b/2a ± √Δ/2a, so the values are m ± r1√Δ/2a with
    m = r0 - r1·b/2a; both are positive iff m > 0 and m² > r1²Δ/4a².
    """
    r0, r1 = lin
    a0, a1, a2 = g.coeffs
    disc = a1 * a1 - 4 * a2 * a0
    m = r0 - r1 * a1 / (2 * a2)
    return m > 0 and m * m > r1 * r1 * disc / (4 * a2 * a2)


def classify_branches(params: ParameterPoint, order: int = DEFAULT_SERIES_ORDER) -> BranchClassification:
    """Real branch pattern of the curve at its point at infinity.

    ``two_real_crossings``: g has two simple real roots u± not shared with q,
    and on each the local equation reduces to v² = λ± X² (times a unit) with
    λ± = 4R²(1 + u±²)q(u±)²/g'(u±)² > 0.  ``no_real_branch``: g has no real
    root, so g² ≥ (min g)² > 0 dominates near the point.  Wall points give
    ``wall_degenerate``.
    """
    if not params.admissible:
        return BranchClassification(WALL_DEGENERATE, direction_discriminant(params.k, params.t))
    form = tangent_form(params, order)
    red = slope_reduction(params, order)
    g, q = red.g, red.q
    delta = form.discriminant
    if delta != direction_discriminant(params.k, params.t):
        raise CertificationError("tangent-form discriminant differs from 4ks²(k − 1)")
    if delta == 0:
        return BranchClassification(WALL_DEGENERATE, delta)
    real = sturm_real_root_count(g)
    if delta > 0:
        dg = g.derivative()
        r1 = sylvester_resultant(g, dg)
        r2 = sylvester_resultant(g, q)
        if real != 2 or r1 == 0 or r2 == 0:
            raise CertificationError("slope polynomial fails the crossing certificates")
        R = params.R
        # on g = 0 the expansion term H(0, u) equals −4R²(1 + u²)q²
        minus = _upoly([-4 * R ** 2, 0, -4 * R ** 2]) * q * q
        h0_ok = _mod(red.H0 - minus, g).is_zero()
        num = _upoly([4 * R ** 2, 0, 4 * R ** 2]) * q * q
        lam = _mod(num * upoly_inverse_mod(_mod(dg * dg, g), g), g)
        lam_c = _linear_coeffs(lam)
        usq = _linear_coeffs(_mod(_upoly([0, 0, 1]), g))
        u_squared = usq[0] if usq[1] == 0 else None
        lambdas = (lam_c[0], lam_c[0]) if lam_c[1] == 0 else None
        if not _positive_at_roots(lam_c, g):
            raise CertificationError("branch coefficient λ is not positive")
        return BranchClassification(
            TWO_REAL_CROSSINGS, delta, real, r1, r2, h0_ok, lam_c, u_squared, lambdas, lambda_positive=True
        )
    a2, a1 = g.coeffs[2], g.coeffs[1]
    if a2 <= 0 or real != 0:
        raise CertificationError("slope polynomial fails the no-branch certificates")
    vertex = -a1 / (2 * a2)
    min_g = g(vertex)
    if min_g <= 0:
        raise CertificationError("minimum of g is not positive")
    return BranchClassification(NO_REAL_BRANCH, delta, real, min_g=min_g, g_squared_lower_bound=min_g ** 2)


# ---------------------------------------------------------------------------
# Points at infinity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InfinityReport:
    point: tuple
    x_vanishes: bool
    y_vanishes: bool
    x4_in_ideal: bool
    scheme_degree: int | None

    @property
    def unique_point(self) -> bool:
        return self.x_vanishes and self.y_vanishes and self.point == (0, 0, 1, 0)


def infinity_points(params: ParameterPoint, budget=None, closure: Ideal | None = None) -> InfinityReport:
    """Intersect the saturated closure with W = 0.

    X and Y lie in the radical (so the only point is [0:0:1:0]), X⁴ lies in
    the ideal itself, and the scheme has length 8 in the chart Z = 1.
    """
    if closure is None:
        closure = projective_closure(build_trisector(params), budget)
    W = PROJECTIVE.gen("W")
    J = closure + [W]
    X, Y = PROJECTIVE.gen("X"), PROJECTIVE.gen("Y")
    xv = in_radical(X, J, budget)
    yv = in_radical(Y, J, budget)
    x4 = J.contains(X ** 4, budget)
    chart = J.dehomogenize("Z")
    chart = Ideal(chart.ctx.with_order(GREVLEX), chart.generators)
    ok, count = is_zero_dimensional(chart, budget)
    point = (0, 0, 1, 0) if xv and yv else None
    return InfinityReport(point, xv, yv, x4, count if ok else None)
