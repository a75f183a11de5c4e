"""Buchberger-based ideal engine over Q.

Reduced Gröbner bases (normal selection strategy with Gebauer–Möller pair
elimination), normal forms, elimination, saturation, intersections,
zero-dimensionality and projective degree by random slicing.

Every potentially long computation takes a :class:`Budget`; exceeding it
raises :class:`BudgetExceeded` deterministically instead of timing out.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from itertools import combinations
from operator import add, sub
from typing import Iterable, Sequence

from gmpy2 import mpq

from .polyring import (
    GREVLEX,
    Polynomial,
    TermOrder,
    VarContext,
    block_order,
    rational_determinant,
)

DEFAULT_MAX_PAIR_REDUCTIONS = 2_000_000


class BudgetExceeded(RuntimeError):
    """The pair-reduction budget ran out before the basis was complete."""

    def __init__(self, work: int, limit: int):
        super().__init__("Groebner budget exceeded after %d pair reductions (limit %d)" % (work, limit))
        self.work = work
        self.limit = limit


class UnitIdeal(ValueError):
    """The ideal is ⟨1⟩, so its variety is empty."""


class DegenerateSlices(RuntimeError):
    """Random coordinate changes never produced agreeing degree counts."""


@dataclass(frozen=True)
class Budget:
    max_pair_reductions: int = DEFAULT_MAX_PAIR_REDUCTIONS

    def __post_init__(self):
        if self.max_pair_reductions <= 0:
            raise ValueError("budget must be positive")


DEFAULT_BUDGET = Budget()


def _as_budget(budget) -> Budget:
    if budget is None:
        return DEFAULT_BUDGET
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


# ---------------------------------------------------------------------------
# Low level engine on monomial -> coefficient dicts
# ---------------------------------------------------------------------------


def _mask(m: tuple) -> int:
    bits = 0
    for i, e in enumerate(m):
        if e:
            bits |= 1 << i
    return bits


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Element:
    """A monic basis polynomial with its terms sorted, lead first."""

    __slots__ = ("lm", "mask", "tail", "terms")

    def __init__(self, terms: dict, key):
        items = sorted(terms.items(), key=lambda t: key(t[0]), reverse=True)
        lc = items[0][1]
        if lc != 1:
            inv = 1 / lc
            items = [(m, c * inv) for m, c in items]
        self.terms = items
        self.lm = items[0][0]
        self.mask = _mask(self.lm)
        self.tail = items[1:]

    def as_dict(self) -> dict:
        return dict(self.terms)


class _Reducer:
    """Full reduction of dict polynomials modulo a list of monic elements."""

    def __init__(self, key):
        self.key = key
        self._nkey: dict = {}

    def nkey(self, m: tuple) -> tuple:
        k = self._nkey.get(m)
        if k is None:
            k = tuple(-x for x in self.key(m))
            self._nkey[m] = k
        return k

    def reduce(self, p: dict, basis: Sequence[_Element]) -> dict:
        p = dict(p)
        if not p or not basis:
            return p
        nkey = self.nkey
        heap = [(nkey(m), m) for m in p]
        heapq.heapify(heap)
        rem = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            m = pop(heap)[1]
            c = p.pop(m, None)
            if c is None:
                continue
            mm = _mask(m)
            for g in basis:
                if g.mask & ~mm or not _divides(g.lm, m):
                    continue
                q = tuple(map(sub, m, g.lm))
                for tm, tc in g.tail:
                    nm = tuple(map(add, tm, q))
                    old = p.get(nm)
                    if old is None:
                        p[nm] = -c * tc
                        push(heap, (nkey(nm), nm))
                    else:
                        v = old - c * tc
                        if v:
                            p[nm] = v
                        else:
                            del p[nm]
                break
            else:
                rem[m] = c
        return rem


def _spoly(f: _Element, g: _Element) -> dict:
    lcm = _lcm(f.lm, g.lm)
    qf = tuple(map(sub, lcm, f.lm))
    qg = tuple(map(sub, lcm, g.lm))
    out: dict = {}
    for m, c in f.tail:
        out[tuple(map(add, m, qf))] = c
    for m, c in g.tail:
        nm = tuple(map(add, m, qg))
        v = out.get(nm, 0) - c
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _gm_update(elems: list, G: list, B: list, ih: int):
    """Gebauer–Möller installation of element ``ih`` into basis ``G``/pairs ``B``."""
    mh = elems[ih].lm
    C = list(G)
    D = []
    while C:
        ig = C.pop(0)
        mg = elems[ig].lm
        lcm_hg = _lcm(mh, mg)
        coprime = lcm_hg == tuple(map(add, mh, mg))

        def dominated(ip):
            return _divides(_lcm(mh, elems[ip].lm), lcm_hg)

        if coprime or (not any(dominated(ip) for ip in C) and not any(dominated(ip) for ip in D)):
            D.append(ig)
    E = []
    for ig in D:
        mg = elems[ig].lm
        if _lcm(mh, mg) != tuple(map(add, mh, mg)):
            E.append((ig, ih))
    B_new = []
    for (i1, i2) in B:
        m1, m2 = elems[i1].lm, elems[i2].lm
        l12 = _lcm(m1, m2)
        if not _divides(mh, l12) or _lcm(m1, mh) == l12 or _lcm(m2, mh) == l12:
            B_new.append((i1, i2))
    B_new.extend(E)
    G_new = [ig for ig in G if not _divides(mh, elems[ig].lm)]
    G_new.append(ih)
    return G_new, B_new


def _groebner_dicts(polys: Iterable[dict], key, limit: int):
    """Reduced monic Gröbner basis of the given dict polynomials."""
    red = _Reducer(key)
    todo = [dict(p) for p in polys if p]
    if not todo:
        return [], 0
    # constants short-circuit
    for p in todo:
        if len(p) == 1 and not any(next(iter(p))):
            n = len(next(iter(p)))
            return [{(0,) * n: mpq(1)}], 0
    todo.sort(key=lambda p: key(max(p, key=key)))
    elems: list = []
    G: list = []
    B: list = []
    for p in todo:
        r = red.reduce(p, [elems[i] for i in G])
        if not r:
            continue
        elems.append(_Element(r, key))
        G, B = _gm_update(elems, G, B, len(elems) - 1)
    work = 0

    # normal strategy: smallest lcm in the term order first
    def pair_key(pair):
        l = _lcm(elems[pair[0]].lm, elems[pair[1]].lm)
        return (key(l), pair)

    while B:
        best = min(B, key=pair_key)
        B.remove(best)
        work += 1
        if work > limit:
            raise BudgetExceeded(work - 1, limit)
        s = _spoly(elems[best[0]], elems[best[1]])
        h = red.reduce(s, [elems[i] for i in G])
        if not h:
            continue
        el = _Element(h, key)
        elems.append(el)
        if not any(el.lm):
            n = len(el.lm)
            return [{(0,) * n: mpq(1)}], work
        G, B = _gm_update(elems, G, B, len(elems) - 1)
    basis = [elems[i] for i in G]
    basis.sort(key=lambda e: key(e.lm))
    # minimal basis
    minimal = []
    for i, e in enumerate(basis):
        if not any(j != i and _divides(f.lm, e.lm) for j, f in enumerate(basis)):
            minimal.append(e)
    # interreduce tails
    reduced = []
    for i, e in enumerate(minimal):
        others = [f for j, f in enumerate(minimal) if j != i]
        tail = red.reduce(dict(e.tail), others)
        tail[e.lm] = mpq(1)
        reduced.append(_Element(tail, key))
    reduced.sort(key=lambda e: key(e.lm))
    return [e.as_dict() for e in reduced], work


# ---------------------------------------------------------------------------
# Public types
# ---------------------------------------------------------------------------


class Ideal:
    """An ideal given by generators in a fixed ring."""

    def __init__(self, ctx: VarContext, generators: Iterable[Polynomial] = ()):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Polynomial):
                g = Polynomial.constant(ctx, g)
            if g.ctx != ctx:
                if g.ctx.variables == ctx.variables:
                    g = Polynomial._raw(ctx, g.terms_dict)
                else:
                    raise ValueError("generator %s is not in ring %r" % (g, ctx))
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ctx = ctx
        self.generators = tuple(gens)
        self._gb_cache: dict = {}

    def __repr__(self) -> str:
        return "Ideal(%s)" % ", ".join(str(g) for g in self.generators)

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.ctx, list(self.generators) + list(other))

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: TermOrder | None = None, budget=None) -> "GroebnerBasis":
        order = order or self.ctx.order
        cached = self._gb_cache.get(order)
        if cached is None:
            cached = buchberger(self, order, budget)
            self._gb_cache[order] = cached
        return cached

    def contains(self, p: Polynomial, budget=None) -> bool:
        return self.groebner(budget=budget).contains(p)

    def is_subset_of(self, other: "Ideal", budget=None) -> bool:
        gb = other.groebner(budget=budget)
        return all(gb.contains(g.to_context(other.ctx)) for g in self.generators)

    def equals(self, other: "Ideal", budget=None) -> bool:
        return self.is_subset_of(other, budget) and other.is_subset_of(self, budget)

    def dehomogenize(self, var: str, value=1) -> "Ideal":
        gens = [g.dehomogenize(var, value) for g in self.generators]
        if gens:
            ctx = gens[0].ctx
        else:
            ctx = VarContext(tuple(v for v in self.ctx.variables if v != var), GREVLEX)
        return Ideal(ctx, gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)


class GroebnerBasis:
    """Reduced Gröbner basis: monic, interreduced, sorted by leading monomial."""

    def __init__(self, ctx: VarContext, elements: Sequence[Polynomial], work_counter: int):
        self.ctx = ctx
        self.elements = tuple(elements)
        self.work_counter = work_counter
        self._engine = [_Element(e.terms_dict, ctx.key) for e in self.elements]
        self._reducer = _Reducer(ctx.key)

    @property
    def order(self) -> TermOrder:
        return self.ctx.order

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return "GroebnerBasis([%s])" % ", ".join(str(e) for e in self.elements)

    def leading_monomials(self) -> list:
        return [e.lm for e in self._engine]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.ctx.variables != self.ctx.variables:
            raise ValueError("polynomial ring %r does not match basis ring %r" % (p.ctx, self.ctx))
        rem = self._reducer.reduce(p.terms_dict, self._engine)
        return Polynomial._raw(p.ctx, rem)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def ideal(self) -> Ideal:
        I = Ideal(self.ctx, self.elements)
        I._gb_cache[self.order] = self
        return I


def buchberger(I: Ideal, order: TermOrder | None = None, budget=None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``I`` with respect to ``order``."""
    budget = _as_budget(budget)
    ctx = I.ctx if order is None else I.ctx.with_order(order)
    if ctx.nvars == 0:
        raise ValueError("Groebner bases need at least one variable")
    dicts, work = _groebner_dicts((g.terms_dict for g in I.generators), ctx.key, budget.max_pair_reductions)
    return GroebnerBasis(ctx, [Polynomial._raw(ctx, d) for d in dicts], work)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` on division by ``gb``."""
    if p.ctx != gb.ctx:
        if p.ctx.variables != gb.ctx.variables:
            raise ValueError("context mismatch between %r and %r" % (p.ctx, gb.ctx))
    return gb.reduce(p)


def is_unit_ideal(I: Ideal, budget=None) -> bool:
    return I.groebner(budget=budget).is_unit()


# ---------------------------------------------------------------------------
# Elimination, saturation, intersection
# ---------------------------------------------------------------------------


def _fresh_name(ctx: VarContext, base: str) -> str:
    name = base
    i = 0
    while name in ctx.variables:
        i += 1
        name = "%s%d" % (base, i)
    return name


def _plain_order(order: TermOrder) -> TermOrder:
    return order if order.kind != "block" else GREVLEX


def _eliminate_from(polys: Sequence[Polynomial], drop: Sequence[str], keep: VarContext, budget) -> list:
    """Generators (a Gröbner basis in ``keep``) of ⟨polys⟩ ∩ Q[keep]."""
    drop = list(drop)
    rest = [v for v in keep.variables]
    elim_ctx = VarContext(tuple(drop) + tuple(rest), block_order(len(drop), GREVLEX, _plain_order(keep.order)))
    moved = [p.to_context(elim_ctx) for p in polys]
    gb = buchberger(Ideal(elim_ctx, moved), budget=budget)
    nd = len(drop)
    out = []
    for e in gb.elements:
        lm = e.leading_monomial()
        if any(lm[:nd]):
            continue
        out.append(e.to_context(keep))
    return out


def elimination_ideal(I: Ideal, drop: Iterable[str], budget=None) -> Ideal:
    """I ∩ Q[remaining variables], via a block order eliminating ``drop``."""
    drop = list(drop)
    for v in drop:
        I.ctx.index(v)
    rest = tuple(v for v in I.ctx.variables if v not in drop)
    if not rest:
        raise ValueError("cannot eliminate every variable")
    if not drop:
        return I
    keep = VarContext(rest, _plain_order(I.ctx.order))
    gens = _eliminate_from(list(I.generators), drop, keep, budget)
    return Ideal(keep, gens)


def _extend(ctx: VarContext, name: str) -> VarContext:
    return VarContext((name,) + ctx.variables, _plain_order(ctx.order))


def saturate_by_poly(I: Ideal, f: Polynomial, budget=None) -> Ideal:
    """I : f^∞ through an auxiliary variable y with the generator 1 - y*f."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.is_constant():
        return I
    y = _fresh_name(I.ctx, "_sat")
    big = _extend(I.ctx, y)
    gens = [g.to_context(big) for g in I.generators]
    gens.append(1 - big.gen(y) * f.to_context(big))
    return Ideal(I.ctx, _eliminate_from(gens, [y], I.ctx, budget))


def ideal_intersection(I: Ideal, J: Ideal, budget=None) -> Ideal:
    """I ∩ J = (t*I + (1-t)*J) ∩ Q[vars]."""
    if I.ctx.variables != J.ctx.variables:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(I.ctx, [])
    t = _fresh_name(I.ctx, "_int")
    big = _extend(I.ctx, t)
    tt = big.gen(t)
    gens = [tt * g.to_context(big) for g in I.generators]
    gens += [(1 - tt) * g.to_context(big) for g in J.generators]
    return Ideal(I.ctx, _eliminate_from(gens, [t], I.ctx, budget))


def saturate_by_ideal(I: Ideal, J: Ideal, budget=None) -> Ideal:
    """I : J^∞ as the intersection of I : g^∞ over the generators g of J."""
    if J.is_zero():
        raise ValueError("cannot saturate by the zero ideal")
    if any(g.is_constant() for g in J.generators):
        return I
    result = None
    for g in J.generators:
        part = saturate_by_poly(I, g.to_context(I.ctx), budget)
        result = part if result is None else ideal_intersection(result, part, budget)
    return result


def in_radical(f: Polynomial, I: Ideal, budget=None) -> bool:
    """Whether f vanishes on V(I) over the algebraic closure (Rabinowitsch)."""
    y = _fresh_name(I.ctx, "_rad")
    big = _extend(I.ctx, y)
    gens = [g.to_context(big) for g in I.generators]
    gens.append(1 - big.gen(y) * f.to_context(big))
    return is_unit_ideal(Ideal(big, gens), budget)


# ---------------------------------------------------------------------------
# Dimension and degree
# ---------------------------------------------------------------------------


def standard_monomials(gb: GroebnerBasis, limit: int = 1_000_000) -> list:
    """Monomials outside the leading-term ideal (must be finitely many)."""
    lms = gb.leading_monomials()
    n = gb.ctx.nvars
    start = (0,) * n
    if any(_divides(m, start) for m in lms):
        return []
    seen = {start}
    stack = [start]
    while stack:
        m = stack.pop()
        for i in range(n):
            nm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nm in seen or any(_divides(l, nm) for l in lms):
                continue
            seen.add(nm)
            if len(seen) > limit:
                raise ValueError("more than %d standard monomials" % limit)
            stack.append(nm)
    return sorted(seen, key=gb.ctx.key)


def is_zero_dimensional(I: Ideal, budget=None):
    """``(True, count)`` for a zero-dimensional ideal, ``(False, None)`` otherwise.

    Raises :class:`UnitIdeal` when the variety is empty.
    """
    gb = I.groebner(budget=budget)
    if gb.is_unit():
        raise UnitIdeal("ideal is the unit ideal")
    lms = gb.leading_monomials()
    n = I.ctx.nvars
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            return False, None
    return True, len(standard_monomials(gb))


def _random_invertible(rng: random.Random, n: int) -> list:
    while True:
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        if rational_determinant(M) != 0:
            return M


def _slice_count(I: Ideal, rng: random.Random, dimension: int, budget):
    ctx = I.ctx
    n = ctx.nvars
    M = _random_invertible(rng, n)
    lin = ctx.gens()
    images = {v: sum((M[i][j] * lin[j] for j in range(n)), Polynomial.zero(ctx)) for i, v in enumerate(ctx.variables)}
    gens = [g.substitute(images, target=ctx) for g in I.generators]
    for _ in range(dimension):
        while True:
            coeffs = [rng.randint(-9, 9) for _ in range(n)]
            if any(coeffs):
                break
        gens.append(sum((c * x for c, x in zip(coeffs, lin)), Polynomial.zero(ctx)))
    last = ctx.variables[-1]
    aff = Ideal(ctx, gens).dehomogenize(last, 1)
    gb = aff.groebner(order=GREVLEX, budget=budget)
    if gb.is_unit():
        return 0
    ok, count = is_zero_dimensional(gb.ideal(), budget)
    return count if ok else None


def projective_degree(I: Ideal, seed: int = 0, budget=None, dimension: int = 1, attempts: int = 5) -> int:
    """Degree of the projective scheme of a homogeneous ideal of dimension ≤ 1.

    A seeded random invertible change of coordinates (entries in −9..9) is
    followed by ``dimension`` random hyperplane slices; in the chart where the
    last coordinate is 1 the standard monomials are counted.  Two independent
    draws must agree.
    """
    if not I.is_homogeneous():
        raise ValueError("projective_degree needs homogeneous generators")
    if dimension not in (0, 1):
        raise ValueError("only schemes of dimension 0 or 1 are supported")
    rng = random.Random(seed)
    for _ in range(attempts):
        a = _slice_count(I, rng, dimension, budget)
        b = _slice_count(I, rng, dimension, budget)
        if a is not None and a == b:
            return a
    raise DegenerateSlices("no agreeing slice counts after %d attempts" % attempts)


def projective_variety_is_empty(I: Ideal, budget=None) -> bool:
    """True iff I : ⟨all variables⟩^∞ = ⟨1⟩, checked chart by chart."""
    for v in I.ctx.variables:
        if not is_unit_ideal(I.dehomogenize(v, 1), budget):
            return False
    return True


# ---------------------------------------------------------------------------
# Jacobians
# ---------------------------------------------------------------------------


def _poly_det(M: list) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _poly_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else Polynomial.zero(M[0][0].ctx)


def jacobian_matrix(polys: Sequence[Polynomial], variables: Sequence[str]) -> list:
    return [[p.diff(v) for v in variables] for p in polys]


def jacobian_minors(polys: Sequence[Polynomial], variables: Sequence[str], minor_size: int) -> list:
    """All nonzero ``minor_size``-square minors of the Jacobian matrix."""
    polys = list(polys)
    variables = list(variables)
    if minor_size < 1 or minor_size > min(len(polys), len(variables)):
        raise ValueError(
            "minor size %d out of range for a %dx%d Jacobian" % (minor_size, len(polys), len(variables))
        )
    J = jacobian_matrix(polys, variables)
    out = []
    for rows in combinations(range(len(polys)), minor_size):
        for cols in combinations(range(len(variables)), minor_size):
            d = _poly_det([[J[r][c] for c in cols] for r in rows])
            if not d.is_zero():
                out.append(d)
    return out
