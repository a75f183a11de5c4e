"""Three skew lines: the classical quadric-only control case.

The generic witness should give a smooth quartic with four real
asymptotic directions; the degenerate witness splits into a nonsingular
twisted cubic and a line that do not meet over the reals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .family import PROJECTIVE, affine_singular_locus
from .groebner import (
    Ideal,
    elimination_ideal,
    ideal_intersection,
    is_unit_ideal,
    is_zero_dimensional,
    jacobian_minors,
    projective_degree,
    projective_variety_is_empty,
    saturate_by_ideal,
    saturate_by_poly,
)
from .polyring import (
    Polynomial,
    Rational,
    UnivariatePoly,
    VarContext,
    rational,
    rational_roots,
    sturm_real_root_count,
    upoly_gcd,
)

DIRECTIONS = VarContext(("X", "Y", "Z"))
RULING = VarContext(("lam", "mu", "p", "q"))


class NoLineFound(RuntimeError):
    """No ruling of the quadric lies on the second surface."""


@dataclass(frozen=True)
class ThreeLineConfig:
    """Lines y = ax, z = 1; y = -ax, z = -1; (u, v, 0) + λ(α, β, 1)."""

    a: Rational
    u: Rational
    v: Rational
    alpha: Rational
    beta: Rational

    def __post_init__(self):
        for name in ("a", "u", "v", "alpha", "beta"):
            object.__setattr__(self, name, rational(getattr(self, name)))
        if self.a == 0:
            raise ValueError("a = 0 makes the first two lines parallel")


GENERIC_WITNESS = ThreeLineConfig(2, 1, 2, 1, 1)
DEGENERATE_WITNESS = ThreeLineConfig(2, 10, -4, 2, 0)


def three_line_equations(cfg: ThreeLineConfig) -> tuple:
    """Homogenized bisectors F12h, F13h of the generic parametrization."""
    a, u, v, al, be = cfg.a, cfg.u, cfg.v, cfg.alpha, cfg.beta
    X, Y, Z, W = PROJECTIVE.gens()
    F12 = Z * W * (1 + a ** 2) + a * X * Y
    F13 = (
        (u ** 2 + v ** 2) * X ** 2
        + (al ** 2 + v ** 2) * Y ** 2
        - (u ** 2 + al ** 2) * Z ** 2
        - 2 * u * al * X * Y
        - 2 * v * al * X * Z
        - 2 * u * v * Y * Z
        + 2 * be * (u ** 2 + v ** 2) * X * W
        - 2 * a * be * (u ** 2 + v ** 2) * Y * W
    )
    return F12, F13


def degenerate_equations() -> tuple:
    """The fixed bisector pair of the cubic-plus-line witness."""
    X, Y, Z, W = PROJECTIVE.gens()
    F12 = 2 * X * Y + 5 * Z * W
    F13 = (
        3 * X ** 2 - 4 * Y ** 2 + Z ** 2 - 4 * X * Y + 4 * X * Z + 20 * X * W
        - 40 * Y * W - 50 * Z * W - 175 * W ** 2
    )
    return F12, F13


# ---------------------------------------------------------------------------
# Asymptotic directions
# ---------------------------------------------------------------------------


def asymptotic_distance_forms(cfg: ThreeLineConfig) -> tuple:
    """Numerators and denominators of the leading squared distances at W = 0."""
    a, al, be = cfg.a, cfg.alpha, cfg.beta
    X, Y, Z = DIRECTIONS.gens()
    d1 = (a ** 2 * X ** 2 - 2 * a * X * Y + Y ** 2 + (1 + a ** 2) * Z ** 2, 1 + a ** 2)
    d2 = (a ** 2 * X ** 2 + 2 * a * X * Y + Y ** 2 + (1 + a ** 2) * Z ** 2, 1 + a ** 2)
    d3 = ((Y - be * Z) ** 2 + (al * Z - X) ** 2 + (be * X - al * Y) ** 2, al ** 2 + be ** 2 + 1)
    return d1, d2, d3


def _binary_coeffs(form: Polynomial, first: str, second: str) -> tuple:
    i, j = DIRECTIONS.index(first), DIRECTIONS.index(second)

    def mono(ei, ej):
        e = [0, 0, 0]
        e[i], e[j] = ei, ej
        return tuple(e)

    return form.coefficient(mono(2, 0)), form.coefficient(mono(1, 1)), form.coefficient(mono(0, 2))


def direction_discriminants(cfg: ThreeLineConfig) -> dict:
    """Δ_X and Δ_Y from the symbolic asymptotic forms and from the closed forms.

    The first two lines force XY = 0 at infinity; on each of X = 0 and
    Y = 0 the equation D∞(L1) = D∞(L3) is a binary quadratic whose
    discriminant is returned.
    """
    (n1, c1), (n2, c2), (n3, c3) = asymptotic_distance_forms(cfg)
    X, Y, Z = DIRECTIONS.gens()
    f12 = n1 * c2 - n2 * c1
    if f12 != -4 * cfg.a * (1 + cfg.a ** 2) * X * Y:
        raise AssertionError("leading bisector of the first two lines is not a multiple of XY")
    f13 = n1 * c3 - n3 * c1
    on_x = f13.substitute({"X": 0}, target=DIRECTIONS)
    on_y = f13.substitute({"Y": 0}, target=DIRECTIONS)
    A, B, C = _binary_coeffs(on_x, "Y", "Z")
    Ay, By, Cy = _binary_coeffs(on_y, "X", "Z")
    a, al, be = cfg.a, cfg.alpha, cfg.beta
    closed_x = 4 * a ** 2 * (1 + a ** 2) * (al ** 2 + be ** 2 + 1)
    closed_y = 4 * (1 + a ** 2) * (al ** 2 + be ** 2 + 1)
    return {
        "coefficients_x": (A, B, C),
        "coefficients_y": (Ay, By, Cy),
        "delta_x": B * B - 4 * A * C,
        "delta_y": By * By - 4 * Ay * Cy,
        "delta_x_closed": closed_x,
        "delta_y_closed": closed_y,
    }


# ---------------------------------------------------------------------------
# Generic witness
# ---------------------------------------------------------------------------


@dataclass
class GenericReport:
    config: ThreeLineConfig
    degree: int
    affine_smooth: bool
    delta_x: Rational
    delta_y: Rational
    formulas_agree: bool

    @property
    def passed(self) -> bool:
        return (
            self.degree == 4
            and self.affine_smooth
            and self.formulas_agree
            and self.delta_x > 0
            and self.delta_y > 0
        )


def three_line_generic(cfg: ThreeLineConfig = GENERIC_WITNESS, seed: int = 0, budget=None) -> GenericReport:
    F12, F13 = three_line_equations(cfg)
    W = PROJECTIVE.gen("W")
    closure = saturate_by_poly(Ideal(PROJECTIVE, [F12, F13]), W, budget)
    degree = projective_degree(closure, seed=seed, budget=budget)
    sing, _ = affine_singular_locus(closure, "W", budget)
    smooth = is_unit_ideal(sing, budget)
    d = direction_discriminants(cfg)
    agree = d["delta_x"] == d["delta_x_closed"] and d["delta_y"] == d["delta_y_closed"]
    return GenericReport(cfg, degree, smooth, d["delta_x"], d["delta_y"], agree)


# ---------------------------------------------------------------------------
# Rulings of the quadric 2XY + 5ZW
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RulingLine:
    family: str
    parameter: tuple
    forms: tuple

    @property
    def ideal(self) -> Ideal:
        return Ideal(PROJECTIVE, self.forms)

    def lies_on(self, surface: Polynomial, budget=None) -> bool:
        return self.ideal.contains(surface, budget)


def ruling_forms(family: str, lam, mu) -> tuple:
    """Linear forms cutting the member (λ:μ) of one ruling of 2XY + 5ZW."""
    lam, mu = rational(lam), rational(mu)
    if lam == 0 and mu == 0:
        raise ValueError("(0:0) is not a projective parameter")
    X, Y, Z, W = PROJECTIVE.gens()
    if family == "A":
        return (mu * X - lam * Z, 2 * lam * Y + 5 * mu * W)
    if family == "B":
        return (mu * X - lam * W, 2 * lam * Y + 5 * mu * Z)
    raise ValueError("ruling family must be 'A' or 'B'")


def _ruling_parametrization(family: str) -> dict:
    # points (p, q) of the member (λ:μ), written in Q[λ, μ, p, q]
    lam, mu, p, q = RULING.gens()
    if family == "A":
        return {"X": lam * p, "Y": 5 * mu * q, "Z": mu * p, "W": -2 * lam * q}
    return {"X": lam * p, "Y": 5 * mu * q, "Z": -2 * lam * q, "W": mu * p}


def _normalize_forms(forms) -> tuple:
    return tuple(f.monic() for f in forms)


def _coefficient_conditions(surface: Polynomial, family: str) -> list:
    """Polynomials in (λ, μ) that vanish iff the member lies on ``surface``."""
    image = surface.substitute(_ruling_parametrization(family), target=RULING)
    params = VarContext(("lam", "mu"))
    groups: dict = {}
    for m, c in image.terms_dict.items():
        groups.setdefault(m[2:], {})[m[:2]] = c
    return [Polynomial(params, g) for g in groups.values()]


def find_ruling_lines(surface: Polynomial) -> list:
    """Every rational member of either ruling of 2XY + 5ZW lying on ``surface``.

    In the chart μ = 1 the conditions are univariate in λ; their gcd has
    the candidate roots.  The limit member (1:0) is tested separately.
    """
    found = []
    for family in ("A", "B"):
        conds = _coefficient_conditions(surface, family)
        if not conds:
            raise ValueError("surface contains the whole quadric")
        g = UnivariatePoly()
        for cnd in conds:
            g = upoly_gcd(g, cnd.substitute({"mu": 1}).to_univariate("lam"))
        if g.is_zero():
            raise ValueError("every member of ruling %s lies on the surface" % family)
        for root in rational_roots(g):
            found.append((family, (root, rational(1))))
        if all(c.evaluate({"lam": 1, "mu": 0}) == 0 for c in conds):
            found.append((family, (rational(1), rational(0))))
    lines = []
    for family, (lam, mu) in found:
        forms = _normalize_forms(ruling_forms(family, lam, mu))
        line = RulingLine(family, (lam, mu), forms)
        if not line.lies_on(surface):
            raise AssertionError("ruling member (%s:%s) does not lie on the surface" % (lam, mu))
        lines.append(line)
    return lines


def find_ruling_line(surface: Polynomial) -> RulingLine:
    lines = find_ruling_lines(surface)
    if not lines:
        raise NoLineFound("no ruling of the quadric lies on the second surface")
    return lines[0]


# ---------------------------------------------------------------------------
# Degenerate witness
# ---------------------------------------------------------------------------


@dataclass
class DegenerateReport:
    line: RulingLine
    lines_found: int
    line_degree: int
    residual_degree: int
    residual_nonsingular: bool
    decomposition_ok: bool
    intersection_zero_dimensional: bool
    intersection_degree: int
    elimination: UnivariatePoly
    real_intersections: int
    infinity_real_point_bound: int
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        target = UnivariatePoly([125, 0, 1])
        X, Y, Z, W = PROJECTIVE.gens()
        return (
            self.line.forms == _normalize_forms((X - 5 * W, Z + 2 * Y))
            and self.line_degree == 1
            and self.residual_degree == 3
            and self.residual_nonsingular
            and self.decomposition_ok
            and self.intersection_zero_dimensional
            and self.elimination.monic() == target
            and self.real_intersections == 0
            and self.infinity_real_point_bound == 0
        )


def _chart_real_point_bound(ideal: Ideal, chart: str, budget) -> int:
    """Upper bound on the real points of V(ideal) in the chart ``chart = 1``.

    Each real point has a real coordinate in every variable, so the fewest
    real roots among the eliminated univariates bounds the count; 0 is a
    certificate that the chart has no real point.
    """
    aff = ideal.dehomogenize(chart)
    if is_unit_ideal(aff, budget):
        return 0
    ok, _ = is_zero_dimensional(aff, budget)
    if not ok:
        raise AssertionError("intersection is not zero-dimensional in chart %s" % chart)
    # a real point would give a real root of every eliminated univariate
    counts = []
    for keep in aff.ctx.variables:
        others = [v for v in aff.ctx.variables if v != keep]
        elim = elimination_ideal(aff, others, budget)
        u = elim.generators[0].to_univariate(keep)
        counts.append(sturm_real_root_count(u))
    return min(counts)


def three_line_degenerate(seed: int = 0, budget=None) -> DegenerateReport:
    F12, F13 = degenerate_equations()
    W = PROJECTIVE.gen("W")
    closure = saturate_by_poly(Ideal(PROJECTIVE, [F12, F13]), W, budget)
    lines = [l for l in find_ruling_lines(F13) if closure.is_subset_of(l.ideal, budget)]
    if not lines:
        raise NoLineFound("no ruling line lies on the projective closure")
    line = lines[0]
    L = line.ideal
    residual = saturate_by_ideal(closure, L, budget)
    line_degree = projective_degree(L, seed=seed, budget=budget)
    residual_degree = projective_degree(residual, seed=seed, budget=budget)
    minors = jacobian_minors(list(residual.generators), PROJECTIVE.variables, 2)
    nonsingular = projective_variety_is_empty(residual + minors, budget)
    recombined = ideal_intersection(residual, L, budget)
    decomposition_ok = recombined.equals(closure, budget)
    J = residual + L
    affine = J.dehomogenize("W")
    zero_dim, _ = is_zero_dimensional(affine, budget)
    degree_J = projective_degree(J, seed=seed, budget=budget, dimension=0)
    elim = elimination_ideal(affine, ["X", "Y"], budget)
    zpoly = elim.generators[0].to_univariate("Z")
    real = sturm_real_root_count(zpoly)
    at_infinity = J + [W]
    inf_points = 0
    for chart in ("X", "Y", "Z"):
        inf_points += _chart_real_point_bound(at_infinity, chart, budget)
    return DegenerateReport(
        line,
        len(lines),
        line_degree,
        residual_degree,
        nonsingular,
        decomposition_ok,
        zero_dim,
        degree_J,
        zpoly,
        real,
        inf_points,
        {"residual_generators": len(residual.generators)},
    )
