"""The two-surface system: parameter points, defining equations, and the
exact checks that run at a fixed parameter value.

Affine coordinates are ``x, y, z``; projective ones ``X, Y, Z, W`` with
``W = 0`` the plane at infinity.  The cosine and sine of the plane angle
are rational through the Weierstrass substitution, so everything stays in
exact rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .groebner import (
    BudgetExceeded,
    Ideal,
    elimination_ideal,
    is_unit_ideal,
    jacobian_minors,
    saturate_by_poly,
)
from .polyring import Polynomial, Rational, VarContext, rational, rational_determinant

AFFINE = VarContext(("x", "y", "z"))
PROJECTIVE = VarContext(("X", "Y", "Z", "W"))
LIFTED = VarContext(("x", "y", "z", "u", "v"))
SYMBOLIC = VarContext(("h", "k", "R", "c", "s", "x", "y", "z", "u", "v"))
PARAMETERS = VarContext(("h", "k", "R", "c", "s"))


class CertificationError(RuntimeError):
    """An identity that must hold exactly did not; the computation is unsound."""


def weierstrass(t) -> tuple:
    """``(c, s)`` with c = (1 - t²)/(1 + t²), s = 2t/(1 + t²)."""
    t = rational(t)
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


@dataclass(frozen=True)
class ParameterPoint:
    """A rational parameter point ``(k, R, t)`` with scale ``h``.

    ``R > 0`` and ``t != 0`` are enforced.  Points on the walls ``k = 0``
    and ``k = h`` are allowed (the boundary analysis needs them) but are
    not admissible for chamber certification.
    """

    k: Rational
    R: Rational
    t: Rational
    h: Rational = field(default_factory=lambda: rational(1))

    def __post_init__(self):
        for name in ("k", "R", "t", "h"):
            object.__setattr__(self, name, rational(getattr(self, name)))
        if self.R <= 0:
            raise ValueError("R must be positive, got %s" % self.R)
        if self.t == 0:
            raise ValueError("t must be nonzero")
        if self.h == 0:
            raise ValueError("h must be nonzero")

    @property
    def c(self) -> Rational:
        return weierstrass(self.t)[0]

    @property
    def s(self) -> Rational:
        return weierstrass(self.t)[1]

    @property
    def admissible(self) -> bool:
        return self.k != 0 and self.k != self.h

    def mirrored(self) -> "ParameterPoint":
        return ParameterPoint(self.k, self.R, -self.t, self.h)

    def as_dict(self) -> dict:
        return {"k": self.k, "R": self.R, "t": self.t, "h": self.h}

    def __str__(self) -> str:
        from .polyring import format_rational as f

        text = "(k=%s, R=%s, t=%s" % (f(self.k), f(self.R), f(self.t))
        if self.h != 1:
            text += ", h=%s" % f(self.h)
        return text + ")"


@dataclass(frozen=True)
class TrisectorSystem:
    params: ParameterPoint
    F1: Polynomial
    F2: Polynomial
    F1h: Polynomial
    F2h: Polynomial

    @property
    def affine_ideal(self) -> Ideal:
        return Ideal(AFFINE, [self.F1, self.F2])

    @property
    def projective_ideal(self) -> Ideal:
        return Ideal(PROJECTIVE, [self.F1h, self.F2h])


def build_trisector(params: ParameterPoint) -> TrisectorSystem:
    """Affine and homogenized defining polynomials at a parameter point.

    The scale ``h`` is fixed to 1 here; the general scale appears only in
    the lifted symbolic system.
    """
    if params.h != 1:
        raise ValueError("the fixed-parameter system uses h = 1")
    k, R, c, s = params.k, params.R, params.c, params.s
    x, y, z = AFFINE.gens()
    F1 = y ** 2 - (x * s - y * c) ** 2 + 2 * z - 1
    F2 = (x ** 2 - 2 * k * z + R ** 2 + k ** 2) ** 2 - 4 * R ** 2 * (x ** 2 + y ** 2)
    X, Y, Z, W = PROJECTIVE.gens()
    F1h = Y ** 2 - (X * s - Y * c) ** 2 + 2 * Z * W - W ** 2
    F2h = (X ** 2 - 2 * k * Z * W + (R ** 2 + k ** 2) * W ** 2) ** 2 - 4 * R ** 2 * W ** 2 * (X ** 2 + Y ** 2)
    # the closed forms must be the homogenizations of the affine pair
    for affine, proj in ((F1, F1h), (F2, F2h)):
        if affine.homogenize("W").rename(PROJECTIVE) != proj:
            raise CertificationError("homogenization mismatch for %s" % affine)
    return TrisectorSystem(params, F1, F2, F1h, F2h)


def t_sign_symmetry_holds(params: ParameterPoint) -> bool:
    """F1 at -t equals F1 at t composed with x -> -x; F2 is even in x."""
    a = build_trisector(params)
    b = build_trisector(params.mirrored())
    flip = {"x": -AFFINE.gen("x")}
    return b.F1 == a.F1.substitute(flip, target=AFFINE) and b.F2 == a.F2.substitute(flip, target=AFFINE)


# ---------------------------------------------------------------------------
# Lifted system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftedSystem:
    ctx: VarContext
    generators: tuple
    coordinates: tuple = ("x", "y", "z", "u", "v")

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.generators)

    def jacobian_minors(self) -> list:
        return jacobian_minors(self.generators[:4], self.coordinates, 4)


def _lifted_generators(h, k, R, c, s, x, y, z, u, v) -> list:
    return [
        y ** 2 - (x * s - y * c) ** 2 + 2 * z * h - h ** 2,
        (x - u) ** 2 + (y - v) ** 2 + (z - k) ** 2 - (y ** 2 + z ** 2),
        u ** 2 + v ** 2 - R ** 2,
        y * u - x * v,
    ]


def build_lifted_system(params: ParameterPoint) -> LiftedSystem:
    """Four generators in ``x, y, z, u, v`` with ``(u, v)`` the circle point."""
    p = params
    gens = _lifted_generators(p.h, p.k, p.R, p.c, p.s, *LIFTED.gens())
    return LiftedSystem(LIFTED, tuple(gens))


def symbolic_lifted_system() -> LiftedSystem:
    """Lifted generators over ``Q[h, k, R, c, s]`` plus ``c² + s² - 1``."""
    h, k, R, c, s, x, y, z, u, v = SYMBOLIC.gens()
    gens = _lifted_generators(h, k, R, c, s, x, y, z, u, v)
    gens.append(c ** 2 + s ** 2 - 1)
    return LiftedSystem(SYMBOLIC, tuple(gens))


def lifted_projects_to_trisector(params: ParameterPoint, budget=None) -> bool:
    """Eliminating ``u, v`` from the lifted ideal reproduces ``<F1, F2>``."""
    sysm = build_trisector(params)
    lifted = build_lifted_system(params)
    elim = elimination_ideal(lifted.ideal, ["u", "v"], budget)
    target = Ideal(elim.ctx, [sysm.F1.to_context(elim.ctx), sysm.F2.to_context(elim.ctx)])
    return elim.equals(target, budget)


# ---------------------------------------------------------------------------
# Smoothness at a fixed parameter point
# ---------------------------------------------------------------------------


def projective_closure(system: TrisectorSystem, budget=None) -> Ideal:
    """Saturation of ``<F1h, F2h>`` by W: drops components inside W = 0."""
    W = PROJECTIVE.gen("W")
    return saturate_by_poly(system.projective_ideal, W, budget)


def affine_singular_locus(closure: Ideal, w: str, budget=None) -> tuple:
    """``((closure + 2x2 Jacobian minors) : w^∞, minor count)`` for a curve.

    The closure may have more than two generators; every 2x2 minor of the
    full Jacobian is used, which cuts the same locus at points where the
    closure is a complete intersection of codimension two.
    """
    gens = list(closure.generators)
    minors = jacobian_minors(gens, closure.ctx.variables, 2)
    wpoly = closure.ctx.gen(w)
    return saturate_by_poly(closure + minors, wpoly, budget), len(minors)


@dataclass
class SmoothnessCertificate:
    smooth: bool
    closure_size: int
    minor_count: int

    def __bool__(self) -> bool:
        return self.smooth


def certify_affine_smooth(params: ParameterPoint, budget=None) -> SmoothnessCertificate:
    """Exact test that the affine curve has no singular point over C.

    Raises :class:`BudgetExceeded` when a Gröbner computation runs out of
    budget; the caller decides how to report that.
    """
    system = build_trisector(params)
    closure = projective_closure(system, budget)
    sing, minor_count = affine_singular_locus(closure, "W", budget)
    smooth = is_unit_ideal(sing, budget)
    return SmoothnessCertificate(smooth, len(closure.generators), minor_count)


# ---------------------------------------------------------------------------
# Discriminant
# ---------------------------------------------------------------------------


def affine_discriminant_eval(params: ParameterPoint) -> Rational:
    """Closed-form affine discriminant h k R² (h - k) [h²R² + s²(hk - k² - R²)²]."""
    h, k, R = params.h, params.k, params.R
    return h * k * R ** 2 * (h - k) * bracket_factor(params)


def bracket_factor(params: ParameterPoint) -> Rational:
    h, k, R, s = params.h, params.k, params.R, params.s
    return h ** 2 * R ** 2 + s ** 2 * (h * k - k ** 2 - R ** 2) ** 2


def symbolic_discriminant() -> Polynomial:
    h, k, R, c, s = PARAMETERS.gens()
    return h * k * R ** 2 * (h - k) * (h ** 2 * R ** 2 + s ** 2 * (h * k - k ** 2 - R ** 2) ** 2)


def axis_condition(params: ParameterPoint) -> Rational:
    """hk − k² − R²; zero exactly when the quadric meets the vertex of F2 = 0.

    The squared bisector F2 = A² − 4R²(x² + y²) is singular at the axis
    point where A = 0, i.e. (0, 0, (R² + k²)/2k).  F1 meets the axis only at
    z = h/2, so the two coincide iff hk − k² − R² = 0, and then (0, 0, h/2)
    is a real singular point of the affine curve.  The closed-form
    discriminant above does not vanish there (its bracket stays ≥ h²R²).
    """
    return params.h * params.k - params.k ** 2 - params.R ** 2


def axis_singular_point(params: ParameterPoint) -> tuple:
    return (rational(0), rational(0), params.h / 2)


@dataclass
class ParametricElimination:
    status: str  # "ok" or "budget_exceeded"
    generators: tuple = ()
    work: int = 0
    divisible: bool | None = None
    sample_check: bool | None = None


def discriminant_sample_points(rng: random.Random, per_factor: int = 50) -> dict:
    """Rational points ``{h, k, R, c, s}`` on the real zero set of each factor.

    ``c, s`` come from a rational ``t`` so ``c² + s² = 1`` holds exactly.
    The bracket factor vanishes over the reals only when ``hR = 0`` and
    ``s(hk - k² - R²) = 0``; its samples cover those branches.
    """

    def q(lo=-6, hi=6):
        while True:
            v = rational(rng.randint(lo, hi)) / rng.randint(1, 5)
            if v != 0:
                return v

    def point(h, k, R, t):
        c, s = weierstrass(t)
        return {"h": rational(h), "k": rational(k), "R": rational(R), "c": c, "s": s}

    out = {"h": [], "k": [], "R": [], "h-k": [], "bracket": []}
    for _ in range(per_factor):
        out["h"].append(point(0, q(), q(), q()))
        out["k"].append(point(q(), 0, q(), q()))
        out["R"].append(point(q(), q(), 0, q()))
        hv = q()
        out["h-k"].append(point(hv, hv, q(), q()))
    branches = [
        lambda: point(0, q(), q(), 0),
        lambda: point(q(), q(), 0, 0),
        lambda: (lambda hv: point(hv, hv, 0, q()))(q()),
        lambda: point(q(), 0, 0, q()),
    ]
    for i in range(per_factor):
        out["bracket"].append(branches[i % len(branches)]())
    return out


def generators_vanish_on_discriminant(gens, rng: random.Random, per_factor: int = 50) -> bool:
    samples = discriminant_sample_points(rng, per_factor)
    for pts in samples.values():
        for pt in pts:
            for g in gens:
                if g.evaluate(pt) != 0:
                    return False
    return True


def parametric_elimination(budget=None, seed: int = 0) -> ParametricElimination:
    """Eliminate the coordinates from lifted system + 4x4 Jacobian minors.

    Returns status ``budget_exceeded`` instead of raising when the Gröbner
    budget runs out; that outcome is an accepted result, not an error.
    """
    lifted = symbolic_lifted_system()
    minors = lifted.jacobian_minors()
    I = Ideal(SYMBOLIC, list(lifted.generators) + minors)
    try:
        elim = elimination_ideal(I, ["x", "y", "z", "u", "v"], budget)
    except BudgetExceeded as exc:
        return ParametricElimination("budget_exceeded", work=exc.work)
    gens = tuple(g.to_context(PARAMETERS) for g in elim.generators)
    delta = symbolic_discriminant()
    trig = Ideal(PARAMETERS, [delta, PARAMETERS.gen("c") ** 2 + PARAMETERS.gen("s") ** 2 - 1])
    divisible = any(trig.contains(g) for g in gens)
    sample_ok = generators_vanish_on_discriminant(gens, random.Random(seed))
    return ParametricElimination("ok", gens, 0, divisible, sample_ok)


# ---------------------------------------------------------------------------
# Boundary walls k = 0 and k = h
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundarySplit:
    k_wall: Rational
    params: ParameterPoint
    projected: Polynomial
    P_a: Polynomial
    P_b: Polynomial
    identity_holds: bool


def boundary_split(k_wall, R, t) -> BoundarySplit:
    """Factor the plane curve over the wall as P_a * P_b.

    For ``k = 1`` the curve is F2 after eliminating z with F1; for
    ``k = 0`` F2 does not involve z and factors directly.  A failed
    identity raises :class:`CertificationError`.
    """
    k_wall = rational(k_wall)
    if k_wall not in (0, 1):
        raise ValueError("boundary walls are k = 0 and k = 1, got %s" % k_wall)
    params = ParameterPoint(k_wall, R, t)
    system = build_trisector(params)
    R, c, s = params.R, params.c, params.s
    x, y, z = AFFINE.gens()
    if k_wall == 1:
        zsol = ((x * s - y * c) ** 2 - y ** 2 + 1) / 2
        if system.F1.substitute({"z": zsol}, target=AFFINE) != 0:
            raise CertificationError("z substitution does not solve F1")
        projected = system.F2.substitute({"z": zsol}, target=AFFINE)
        P_a = (x * c + y * s) ** 2 - 2 * R * (x * s - y * c) - R ** 2
        P_b = (x * c + y * s) ** 2 + 2 * R * (x * s - y * c) - R ** 2
    else:
        projected = system.F2
        P_a = x ** 2 + 2 * R * y - R ** 2
        P_b = x ** 2 - 2 * R * y - R ** 2
    ok = projected == P_a * P_b
    if not ok:
        raise CertificationError("boundary factorization failed at k=%s" % k_wall)
    return BoundarySplit(k_wall, params, projected, P_a, P_b, ok)


@dataclass(frozen=True)
class NodeCertificate:
    point: tuple
    residuals: tuple
    component_residuals: tuple
    gradient_determinant: Rational
    transversal: bool


def node_points(split: BoundarySplit) -> list:
    """The nodes where the two wall components meet, with exact certificates.

    At each node both defining polynomials vanish and the 3x3 determinant
    of the gradients of F1, P_a, P_b has absolute value 16R², so both
    components are smooth there and cross transversally.
    """
    p = split.params
    R, c, s = p.R, p.c, p.s
    if split.k_wall == 1:
        zval = (1 - R ** 2 * s ** 2) / 2
        pts = [(R * c, R * s, zval), (-R * c, -R * s, zval)]
    else:
        zval = (1 + R ** 2 * s ** 2) / 2
        pts = [(R, rational(0), zval), (-R, rational(0), zval)]
    system = build_trisector(p)
    out = []
    for pt in pts:
        env = dict(zip(("x", "y", "z"), pt))
        residuals = (system.F1.evaluate(env), system.F2.evaluate(env))
        comp = (split.P_a.evaluate(env), split.P_b.evaluate(env))
        surfaces = (system.F1, split.P_a.to_context(AFFINE), split.P_b.to_context(AFFINE))
        grads = [[P.diff(v).evaluate(env) for v in ("x", "y", "z")] for P in surfaces]
        det = rational_determinant(grads)
        if any(residuals) or any(comp) or abs(det) != 16 * R ** 2:
            raise CertificationError("node certificate failed at %s" % (pt,))
        out.append(NodeCertificate(tuple(pt), residuals, comp, det, det != 0))
    return out
