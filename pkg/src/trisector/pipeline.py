"""Transition-set certification over the (k, R, t) parameter space.

Candidate walls come from the direction discriminant at infinity and the
affine discriminant.  The complement splits into chambers, each certified
at an exact rational witness plus a few random extra points, and each wall
is confirmed by an explicit factorization with nodes.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass

from gmpy2 import mpq

from . import benchmark as bench
from .family import (
    CertificationError,
    ParameterPoint,
    affine_discriminant_eval,
    affine_singular_locus,
    axis_singular_point,
    boundary_split,
    bracket_factor,
    build_trisector,
    certify_affine_smooth,
    node_points,
    parametric_elimination,
    projective_closure,
    t_sign_symmetry_holds,
)
from .groebner import DEFAULT_MAX_PAIR_REDUCTIONS, BudgetExceeded, DegenerateSlices, Ideal, buchberger, projective_degree
from .infinity import (
    DEFAULT_SERIES_ORDER,
    NO_REAL_BRANCH,
    TWO_REAL_CROSSINGS,
    TruncatedSeries,
    classify_branches,
    compose_in_w,
    direction_discriminant,
    infinity_points,
    tangent_form,
)
from .polyring import Polynomial, Rational, VarContext, rational, rational_roots

PARAMS = VarContext(("k", "R", "t"))
TRIG = VarContext(("k", "c", "s"))
DEFAULT_EXTRA_SAMPLES = 5
DEFAULT_BOUNDARY_SAMPLES = 3
DEFAULT_PARAMETRIC_BUDGET = 400

PASS, FAIL, BUDGET = "pass", "fail", "budget_exceeded"


def encode(q) -> str:
    """Report encoding of a rational: always ``"p/q"``."""
    q = rational(q)
    return "%d/%d" % (q.numerator, q.denominator)


def decode(text: str) -> Rational:
    num, den = text.split("/")
    return mpq(int(num), int(den))


# ---------------------------------------------------------------------------
# Walls
# ---------------------------------------------------------------------------


def symbolic_tangent_form() -> tuple:
    """Initial form of the local equation with k, R, c, s left symbolic.

    Parameters get weight 0 in the truncation so only X, Y count towards the
    series order.  Returns ``(initial form, E)`` in Q[k, R, c, s, X, Y].
    """
    ring = VarContext(("k", "R", "c", "s", "X", "Y"))
    ring_w = VarContext(("k", "R", "c", "s", "X", "Y", "W"))
    weights = (0, 0, 0, 0, 1, 1)
    k, R, c, s, X, Y = ring.gens()
    W = ring_w.gen("W")
    Q = (s ** 2 * X ** 2 - 2 * s * c * X * Y - s ** 2 * Y ** 2) / 2
    order = 6
    Qs = TruncatedSeries(Q, order, weights)
    omega = TruncatedSeries(Polynomial.zero(ring), order, weights)
    for _ in range(order):
        nxt = Qs + omega * omega * (rational(1) / 2)
        if nxt == omega:
            break
        omega = nxt
    kw, Rw = ring_w.gen("k"), ring_w.gen("R")
    Xw, Yw = ring_w.gen("X"), ring_w.gen("Y")
    F2 = (Xw ** 2 - 2 * kw * W + (Rw ** 2 + kw ** 2) * W ** 2) ** 2 - 4 * Rw ** 2 * W ** 2 * (Xw ** 2 + Yw ** 2)
    G = compose_in_w(F2, omega).poly
    init = Polynomial(ring, {m: cf for m, cf in G.terms_dict.items() if m[4] + m[5] == 4})
    E = (1 - k * s ** 2) * X ** 2 + 2 * k * s * c * X * Y + k * s ** 2 * Y ** 2
    if init != E ** 2:
        raise CertificationError("symbolic initial form is not E²")
    return init, E


def symbolic_direction_discriminant() -> Polynomial:
    """b² − 4ac of E, reduced modulo c² + s² − 1, in Q[k, c, s]."""
    _, E = symbolic_tangent_form()
    coeff = {}
    for m, cf in E.terms_dict.items():
        coeff.setdefault(m[4:], {})[(m[0], m[2], m[3])] = cf
    a, b, c2 = (Polynomial(TRIG, coeff.get(e, {})) for e in ((2, 0), (1, 1), (0, 2)))
    disc = b * b - 4 * a * c2
    cc, ss = TRIG.gen("c"), TRIG.gen("s")
    trig = buchberger(Ideal(TRIG, [cc ** 2 + ss ** 2 - 1]))
    return trig.reduce(disc)


@dataclass(frozen=True)
class WallDerivation:
    walls: tuple
    direction_discriminant: Polynomial
    closed_form: Polynomial
    closed_form_agrees: bool
    affine_walls: tuple


def candidate_walls() -> WallDerivation:
    """Σ = {k = 0} ∪ {k = 1}, re-derived symbolically.

    The direction discriminant reduces to 4ks²(k − 1); s ≠ 0 because t ≠ 0,
    so its k-roots are the walls.  The affine discriminant kR²(1 − k)·S has
    R > 0 and S ≥ R² > 0 on the admissible region, so it adds the same
    two values and nothing else.
    """
    disc = symbolic_direction_discriminant()
    k, c, s = TRIG.gens()
    closed = 4 * k * s ** 2 * (k - 1)
    agrees = disc == closed
    # divide out s², which never vanishes for t ≠ 0
    in_k = Polynomial(VarContext(("k",)), {(m[0],): cf for m, cf in disc.terms_dict.items()})
    if any(m[2] != 2 or m[1] != 0 for m in disc.terms_dict):
        raise CertificationError("direction discriminant is not s² times a polynomial in k")
    walls = tuple(sorted(set(rational_roots(in_k.to_univariate("k")))))
    kk = VarContext(("k",)).gen("k")
    affine_roots = tuple(sorted(set(rational_roots((kk * (1 - kk)).to_univariate("k")))))
    return WallDerivation(walls, disc, closed, agrees, affine_roots)


# ---------------------------------------------------------------------------
# Chambers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    """``poly > 0`` over the parameter ring."""

    poly: Polynomial

    def holds(self, point: dict) -> bool:
        return self.poly.evaluate(point) > 0

    def __str__(self) -> str:
        return "%s > 0" % self.poly


@dataclass(frozen=True)
class Chamber:
    name: str
    k_interval: tuple  # (lo, hi), None for an infinite end
    t_sign: int
    mirror: str
    witness: ParameterPoint | None = None

    @property
    def constraints(self) -> tuple:
        k, R, t = PARAMS.gens()
        # genericity: stay off the axis locus R² = k − k², see axis_condition
        cons = [Constraint(R), Constraint(self.t_sign * t), Constraint((k - k ** 2 - R ** 2) ** 2)]
        lo, hi = self.k_interval
        if lo is not None:
            cons.append(Constraint(k - lo))
        if hi is not None:
            cons.append(Constraint(hi - k))
        return tuple(cons)

    @property
    def expected_kind(self) -> str:
        lo, hi = self.k_interval
        return NO_REAL_BRANCH if (lo == 0 and hi == 1) else TWO_REAL_CROSSINGS

    def contains(self, p: ParameterPoint) -> bool:
        return all(c.holds({"k": p.k, "R": p.R, "t": p.t}) for c in self.constraints)


def _interval_name(lo, hi) -> str:
    if lo is None:
        return "k<%s" % _fmt(hi)
    if hi is None:
        return "k>%s" % _fmt(lo)
    return "%s<k<%s" % (_fmt(lo), _fmt(hi))


def _fmt(q) -> str:
    q = rational(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


DEFAULT_WITNESS_K = {(None, 0): rational(-1), (0, 1): rational(1) / 2, (1, None): rational(2)}


def enumerate_chambers(walls=(0, 1)) -> list:
    """Intervals between consecutive walls, times the sign of t.

    For the walls {0, 1} the witnesses are k = −1, 1/2, 2 with R = 1 and
    t = ±1; for other wall sets they come from :func:`find_witness`.
    """
    walls = sorted(rational(w) for w in walls)
    bounds = [None] + walls + [None]
    out = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        base = _interval_name(lo, hi)
        pos, neg = base + ",t>0", base + ",t<0"
        for name, sign, mirror in ((pos, 1, neg), (neg, -1, pos)):
            ch = Chamber(name, (lo, hi), sign, mirror)
            k = DEFAULT_WITNESS_K.get((lo, hi))
            w = ParameterPoint(k, 1, sign) if k is not None else chamber_witness(ch)
            out.append(Chamber(name, (lo, hi), sign, mirror, w))
    return out


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------


class Infeasible(RuntimeError):
    """No witness found; ``reason`` is ``"empty"`` or ``"budget"``."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def _floor(q: Rational) -> int:
    return q.numerator // q.denominator


def simplest_between(lo: Rational, hi: Rational) -> Rational:
    """The rational with smallest denominator (then numerator) in (lo, hi)."""
    lo, hi = rational(lo), rational(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return rational(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = _floor(lo)
    if n + 1 < hi:
        return rational(n + 1)
    a, b = lo - n, hi - n  # 0 <= a < b <= 1, no integer strictly inside
    if a == 0:
        y = rational(_floor(1 / b) + 1)
    else:
        y = simplest_between(1 / b, 1 / a)
    return n + 1 / y


def _interval_pow(lo, hi, e):
    if e == 0:
        return rational(1), rational(1)
    a, b = lo ** e, hi ** e
    if e % 2 == 0 and lo < 0 < hi:
        return rational(0), max(a, b)
    return min(a, b), max(a, b)


def _interval_eval(poly: Polynomial, box: list) -> tuple:
    lo_total = hi_total = rational(0)
    for m, c in poly.terms_dict.items():
        tl, th = c, c
        for (bl, bh), e in zip(box, m):
            if e:
                pl, ph = _interval_pow(bl, bh, e)
                prods = (tl * pl, tl * ph, th * pl, th * ph)
                tl, th = min(prods), max(prods)
        lo_total += tl
        hi_total += th
    return lo_total, hi_total


def find_witness(constraints, max_depth: int = 20, max_radius_exp: int = 6, node_limit: int = 20000) -> dict:
    """A rational point where every ``poly > 0`` holds, found by box refinement.

    Boxes grow as [−2^e, 2^e]^n; each box is pruned by interval evaluation,
    its simplest interior point is tested exactly, and otherwise it is
    bisected along its widest side.  Raises :class:`Infeasible` with reason
    ``"empty"`` when every box was pruned, ``"budget"`` when the depth or
    node limit cut the search short.
    """
    constraints = [c if isinstance(c, Constraint) else Constraint(c) for c in constraints]
    if not constraints:
        raise ValueError("no constraints given")
    ctx = constraints[0].poly.ctx
    names = ctx.variables
    nodes = 0
    truncated = False
    for e in range(max_radius_exp + 1):
        r = rational(2) ** e
        queue = deque([([(-r, r)] * len(names), 0)])
        while queue:
            box, depth = queue.popleft()
            nodes += 1
            if nodes > node_limit:
                raise Infeasible("budget", "node limit %d reached" % node_limit)
            ranges = [_interval_eval(c.poly, box) for c in constraints]
            if any(hi <= 0 for lo, hi in ranges):
                continue
            point = {v: simplest_between(lo, hi) for v, (lo, hi) in zip(names, box)}
            failing = [c for c in constraints if not c.holds(point)]
            if not failing:
                return point
            if depth >= max_depth:
                truncated = True
                continue
            # split only along variables some failing constraint depends on
            used = set().union(*(c.poly.support() for c in failing))
            widths = [(hi - lo, j) for j, (lo, hi) in enumerate(box) if names[j] in used]
            i = max(widths, key=lambda w: (w[0], -w[1]))[1]
            lo, hi = box[i]
            mid = (lo + hi) / 2
            for half in ((lo, mid), (mid, hi)):
                child = list(box)
                child[i] = half
                queue.append((child, depth + 1))
    if truncated:
        raise Infeasible("budget", "depth limit %d reached" % max_depth)
    raise Infeasible("empty", "every box up to radius 2^%d was pruned" % max_radius_exp)


def chamber_witness(ch: Chamber) -> ParameterPoint:
    pt = find_witness(ch.constraints)
    return ParameterPoint(pt["k"], pt["R"], pt["t"])


def random_chamber_point(ch: Chamber, rng: random.Random) -> ParameterPoint:
    """A seeded random rational point strictly inside the chamber (off the axis locus)."""

    def pos():
        return rational(rng.randint(1, 12)) / rng.randint(1, 9)

    lo, hi = ch.k_interval
    while True:
        if lo is None:
            k = hi - pos()
        elif hi is None:
            k = lo + pos()
        else:
            a = rng.randint(1, 11)
            b = rng.randint(a + 1, 12)
            k = lo + (hi - lo) * rational(a) / b
        p = ParameterPoint(k, pos(), ch.t_sign * pos())
        if ch.contains(p):
            return p


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def _check(status: str, expected=None, observed=None, **extra) -> dict:
    out = {"status": status}
    if expected is not None:
        out["expected"] = expected
    if observed is not None:
        out["observed"] = observed
    out.update(extra)
    return out


def _run(fn):
    """Run a check; BudgetExceeded becomes a budget_exceeded check."""
    try:
        return fn()
    except BudgetExceeded as exc:
        return _check(BUDGET, observed="work %d over limit %d" % (exc.work, exc.limit))
    except DegenerateSlices as exc:
        return _check(FAIL, observed=str(exc))
    except CertificationError as exc:
        return _check(FAIL, observed=str(exc))


def _params_dict(p: ParameterPoint) -> dict:
    return {"k": encode(p.k), "R": encode(p.R), "t": encode(p.t)}


def _smooth_check(p: ParameterPoint, budget) -> dict:
    def go():
        cert = certify_affine_smooth(p, budget)
        S = bracket_factor(p)
        ok = cert.smooth and S >= p.R ** 2
        return _check(PASS if ok else FAIL, "unit", "unit" if cert.smooth else "proper",
                      bracket=encode(S), discriminant=encode(affine_discriminant_eval(p)))

    return _run(go)


def _degree_check(p: ParameterPoint, seed: int, budget) -> dict:
    def go():
        closure = projective_closure(build_trisector(p), budget)
        d = projective_degree(closure, seed=seed, budget=budget)
        return _check(PASS if d == 8 else FAIL, 8, d)

    return _run(go)


def _infinity_check(p: ParameterPoint, budget) -> dict:
    def go():
        rep = infinity_points(p, budget)
        ok = rep.unique_point and rep.x4_in_ideal and rep.scheme_degree == 8
        return _check(
            PASS if ok else FAIL,
            {"point": "[0:0:1:0]", "scheme_degree": 8},
            {"point": "[0:0:1:0]" if rep.unique_point else "other", "scheme_degree": rep.scheme_degree,
             "x4_in_ideal": rep.x4_in_ideal},
        )

    return _run(go)


def _discriminant_check(p: ParameterPoint, order: int) -> dict:
    def go():
        tf = tangent_form(p, order)
        closed = direction_discriminant(p.k, p.t)
        return _check(PASS if tf.discriminant == closed else FAIL, encode(closed), encode(tf.discriminant))

    return _run(go)


def _classification_check(p: ParameterPoint, expected: str, order: int) -> dict:
    def go():
        b = classify_branches(p, order)
        extra = {"delta": encode(b.delta)}
        if b.kind == TWO_REAL_CROSSINGS:
            extra["real_slopes"] = b.real_slopes
            extra["res_g_dg"] = encode(b.res_g_dg)
            extra["res_g_q"] = encode(b.res_g_q)
            extra["h0_reduction"] = b.h0_reduction_ok
            extra["lambda_mod_g"] = [encode(x) for x in b.lambda_mod_g]
            if b.lambdas is not None:
                extra["lambda"] = encode(b.lambdas[0])
            ok = b.h0_reduction_ok and b.lambda_positive
        elif b.kind == NO_REAL_BRANCH:
            extra["min_g"] = encode(b.min_g)
            extra["g_squared_lower_bound"] = encode(b.g_squared_lower_bound)
            ok = True
        else:
            ok = False
        ok = ok and b.kind == expected
        return _check(PASS if ok else FAIL, expected, b.kind, **extra)

    return _run(go)


def certify_chamber(
    ch: Chamber,
    budget=None,
    seed: int = 0,
    series_order: int = DEFAULT_SERIES_ORDER,
    extra_samples: int = DEFAULT_EXTRA_SAMPLES,
) -> dict:
    """All checks at the chamber witness plus classification at extra points."""
    w = ch.witness if ch.witness is not None else chamber_witness(ch)
    checks = {
        "witness_in_chamber": _check(PASS if ch.contains(w) else FAIL, ch.name, _params_dict(w)),
        "witness_search": _search_check(ch),
        "affine_smooth": _smooth_check(w, budget),
        "projective_degree": _degree_check(w, seed, budget),
        "infinity": _infinity_check(w, budget),
        "direction_discriminant": _discriminant_check(w, series_order),
        "classification": _classification_check(w, ch.expected_kind, series_order),
        "t_sign_mirror": _mirror_check(w, ch, series_order),
    }
    rng = random.Random("%d:%s" % (seed, ch.name))
    samples = []
    for _ in range(extra_samples):
        p = random_chamber_point(ch, rng)
        sc = {
            "affine_smooth": _smooth_check(p, budget),
            "direction_discriminant": _discriminant_check(p, series_order),
            "classification": _classification_check(p, ch.expected_kind, series_order),
        }
        samples.append({"params": _params_dict(p), "checks": sc, "status": combine_statuses(sc.values())})
    status = combine_statuses(list(checks.values()) + samples)
    return {
        "name": ch.name,
        "k_interval": [None if b is None else encode(b) for b in ch.k_interval],
        "t_sign": ch.t_sign,
        "mirror": ch.mirror,
        "witness": _params_dict(w),
        "checks": checks,
        "samples": samples,
        "status": status,
    }


def _search_check(ch: Chamber) -> dict:
    try:
        pt = find_witness(ch.constraints)
    except Infeasible as exc:
        return _check(BUDGET if exc.reason == "budget" else FAIL, ch.name, exc.reason)
    p = ParameterPoint(pt["k"], pt["R"], pt["t"])
    return _check(PASS if ch.contains(p) else FAIL, ch.name, _params_dict(p))


def _mirror_check(w: ParameterPoint, ch: Chamber, order: int) -> dict:
    def go():
        same = classify_branches(w.mirrored(), order).kind == ch.expected_kind
        ok = t_sign_symmetry_holds(w) and same
        return _check(PASS if ok else FAIL, ch.mirror, ch.mirror if ok else "mismatch")

    return _run(go)


def combine_statuses(items) -> str:
    statuses = [i["status"] for i in items]
    if FAIL in statuses:
        return FAIL
    if BUDGET in statuses:
        return BUDGET
    return PASS


def certify_boundary(k_wall, budget=None, seed: int = 0, samples: int = DEFAULT_BOUNDARY_SAMPLES) -> dict:
    """Factorization and nodes at (R, t) = (1, 1) and at seeded random (R, t)."""
    k_wall = rational(k_wall)
    rng = random.Random("%d:boundary:%s" % (seed, encode(k_wall)))
    points = [(rational(1), rational(1))]
    for _ in range(samples):
        R = rational(rng.randint(1, 12)) / rng.randint(1, 9)
        t = rational(rng.choice((-1, 1)) * rng.randint(1, 12)) / rng.randint(1, 9)
        points.append((R, t))
    entries = []
    for R, t in points:
        entry = {"R": encode(R), "t": encode(t)}
        try:
            split = boundary_split(k_wall, R, t)
            nodes = node_points(split)
            entry["factors"] = [str(split.P_a), str(split.P_b)]
            entry["identity"] = _check(PASS)
            entry["nodes"] = [
                {
                    "point": [encode(x) for x in n.point],
                    "residuals": [encode(x) for x in n.residuals],
                    "gradient_determinant": encode(n.gradient_determinant),
                }
                for n in nodes
            ]
            entry["node_check"] = _check(PASS, encode(16 * R ** 2), encode(abs(nodes[0].gradient_determinant)))
        except CertificationError as exc:
            entry["identity"] = _check(FAIL, observed=str(exc))
            entry["node_check"] = _check(FAIL)
        entry["status"] = combine_statuses([entry["identity"], entry["node_check"]])
        entries.append(entry)

    def singular():
        cert = certify_affine_smooth(ParameterPoint(k_wall, 1, 1), budget)
        return _check(PASS if not cert.smooth else FAIL, "proper", "unit" if cert.smooth else "proper")

    sing = _run(singular)
    return {
        "k": encode(k_wall),
        "samples": entries,
        "singular_at_wall": sing,
        "status": combine_statuses(entries + [sing]),
    }


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


REPORT_KEYS = ("walls", "chambers", "boundaries", "benchmarks", "seed", "budgets", "status")


@dataclass
class CertificationReport:
    walls: dict
    chambers: list
    boundaries: list
    benchmarks: dict
    seed: int
    budgets: dict
    status: str

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in REPORT_KEYS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "CertificationReport":
        missing = [k for k in REPORT_KEYS if k not in data]
        if missing:
            raise ValueError("report is missing keys: %s" % ", ".join(missing))
        return cls(**{k: data[k] for k in REPORT_KEYS})

    @classmethod
    def from_json(cls, text: str) -> "CertificationReport":
        return cls.from_dict(json.loads(text))

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, BUDGET: 2}[self.status]


def _walls_section(parametric: bool, parametric_budget: int, seed: int) -> dict:
    deriv = candidate_walls()
    expected = [rational(0), rational(1)]
    checks = {
        "direction_discriminant": _check(
            PASS if deriv.closed_form_agrees else FAIL, str(deriv.closed_form), str(deriv.direction_discriminant)
        ),
        "walls": _check(
            PASS if list(deriv.walls) == expected and list(deriv.affine_walls) == expected else FAIL,
            [encode(x) for x in expected],
            [encode(x) for x in deriv.walls],
        ),
    }
    section = {"values": [encode(w) for w in deriv.walls], "variable": "k", "checks": checks,
               "findings": [_axis_finding()], "status": combine_statuses(checks.values())}
    if parametric:
        res = parametric_elimination(parametric_budget, seed)
        section["parametric"] = {
            "status": res.status,
            "generators": len(res.generators),
            "divisible": res.divisible,
            "sample_check": res.sample_check,
        }
    return section


def _axis_finding() -> dict:
    """Recompute the affine singular point on R² = k − k² at (1/2, 1/2, 1/2).

    This locus is not detected by the closed-form affine discriminant; it is
    listed so the report states which witnesses were excluded and why.
    """
    p = ParameterPoint(rational(1) / 2, rational(1) / 2, rational(1) / 2)
    closure = projective_closure(build_trisector(p))
    sing_gb = [str(g) for g in affine_singular_locus(closure, "W")[0].groebner()]
    return {
        "locus": "R^2 = k - k^2",
        "params": _params_dict(p),
        "singular_point": [encode(x) for x in axis_singular_point(p)],
        "singular_ideal": sing_gb,
        "affine_discriminant": encode(affine_discriminant_eval(p)),
        "excluded_from_witnesses": True,
    }


def benchmarks_section(seed: int, budget) -> dict:
    def generic():
        r = bench.three_line_generic(seed=seed, budget=budget)
        return _check(PASS if r.passed else FAIL, {"degree": 4, "delta_x": "240/1", "delta_y": "60/1"},
                      {"degree": r.degree, "affine_smooth": r.affine_smooth,
                       "delta_x": encode(r.delta_x), "delta_y": encode(r.delta_y)})

    def degenerate():
        r = bench.three_line_degenerate(seed=seed, budget=budget)
        return _check(
            PASS if r.passed else FAIL,
            {"line": "X - 5*W, Y + 1/2*Z", "residual_degree": 3, "elimination": "Z^2 + 125"},
            {
                "line": ", ".join(str(f) for f in r.line.forms),
                "residual_degree": r.residual_degree,
                "residual_nonsingular": r.residual_nonsingular,
                "elimination": str(r.elimination.monic().to_polynomial(VarContext(("Z",)), "Z")),
                "real_intersections": r.real_intersections,
                "infinity_real_point_bound": r.infinity_real_point_bound,
            },
        )

    def guarded(fn):
        try:
            return _run(fn)
        except bench.NoLineFound as exc:
            return _check(FAIL, observed=str(exc))

    g, d = guarded(generic), guarded(degenerate)
    return {"three_line_generic": g, "three_line_degenerate": d, "status": combine_statuses([g, d])}


MIRRORED_CHECKS = ("affine_smooth", "projective_degree", "classification")


def _compare_mirrors(chambers: list) -> None:
    """Add a check that each chamber and its t-mirror observed the same results."""
    by_name = {c["name"]: c for c in chambers}
    for c in chambers:
        other = by_name.get(c["mirror"])
        if other is None:
            c["checks"]["mirror_agrees"] = _check(FAIL, c["mirror"], "missing")
        else:
            mine = [c["checks"][k].get("observed") for k in MIRRORED_CHECKS]
            theirs = [other["checks"][k].get("observed") for k in MIRRORED_CHECKS]
            c["checks"]["mirror_agrees"] = _check(PASS if mine == theirs else FAIL, theirs, mine)
        c["status"] = combine_statuses(list(c["checks"].values()) + c["samples"])


def assemble_transition_report(
    seed: int = 0,
    gb_budget: int = DEFAULT_MAX_PAIR_REDUCTIONS,
    series_order: int = DEFAULT_SERIES_ORDER,
    benchmarks: bool = False,
    parametric: bool = False,
    parametric_budget: int = DEFAULT_PARAMETRIC_BUDGET,
    extra_samples: int = DEFAULT_EXTRA_SAMPLES,
) -> CertificationReport:
    walls = _walls_section(parametric, parametric_budget, seed)
    values = [decode(v) for v in walls["values"]]
    chambers = [certify_chamber(ch, gb_budget, seed, series_order, extra_samples) for ch in enumerate_chambers(values)]
    _compare_mirrors(chambers)
    boundaries = [certify_boundary(w, gb_budget, seed) for w in values]
    bench_section = benchmarks_section(seed, gb_budget) if benchmarks else {}
    parts = [walls] + chambers + boundaries + ([bench_section] if benchmarks else [])
    budgets = {"gb_budget": gb_budget, "series_order": series_order, "extra_samples": extra_samples}
    if parametric:
        budgets["parametric_budget"] = parametric_budget
    return CertificationReport(walls, chambers, boundaries, bench_section, seed, budgets, combine_statuses(parts))
