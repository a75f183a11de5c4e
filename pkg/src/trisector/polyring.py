"""Exact multivariate polynomials over Q, monomial orders and univariate tools.

Coefficients are ``gmpy2.mpq`` values: always a reduced fraction with a
positive denominator.  Multivariate polynomials are sparse maps from exponent
tuples to nonzero coefficients and are immutable once built.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Sequence, Union

from gmpy2 import mpq, mpz

Rational = type(mpq(0))
Monomial = tuple

RationalLike = Union[int, Fraction, str, "mpq"]

_ZERO = mpq(0)
_ONE = mpq(1)


class ContextMismatch(ValueError):
    """Raised when polynomials from different rings are combined."""


def rational(value) -> mpq:
    """Coerce ``value`` (int, Fraction, mpq or a ``"p/q"`` string) to mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        num, sep, den = text.partition("/")
        try:
            if sep:
                if int(den) == 0:
                    raise ZeroDivisionError("zero denominator in %r" % value)
                return mpq(int(num), int(den))
            return mpq(int(num))
        except ValueError:
            raise ValueError("not a rational literal: %r" % value) from None
    if type(value).__name__ == "mpz":
        return mpq(value)
    raise TypeError("cannot interpret %r as a rational" % (value,))


def format_rational(q) -> str:
    """Canonical text: ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TermOrder:
    """A multiplicative total order on monomials.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``.  A block order
    compares the first ``n_elim`` exponents with ``front`` and breaks ties on
    the remaining exponents with ``back``; every monomial containing an
    eliminated variable is then larger than all monomials free of them.
    """

    kind: str = "grevlex"
    n_elim: int = 0
    front: "TermOrder | None" = None
    back: "TermOrder | None" = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError("unknown term order kind %r" % self.kind)
        if self.kind == "block":
            if self.n_elim <= 0:
                raise ValueError("block order needs a positive elimination count")
            if self.front is None or self.back is None:
                raise ValueError("block order needs front and back orders")
            if self.front.kind == "block" or self.back.kind == "block":
                raise ValueError("nested block orders are not supported")

    def check_arity(self, n: int) -> None:
        if self.kind == "block" and not 0 < self.n_elim < n:
            raise ValueError(
                "block elimination count %d must lie strictly between 0 and %d"
                % (self.n_elim, n)
            )

    def key_function(self, n: int) -> Callable[[tuple], tuple]:
        """Return ``key`` with ``key(a) < key(b)`` iff ``a < b`` in this order.

        Keys are flat integer tuples that are additive under monomial
        multiplication, so negating them elementwise reverses the order.
        """
        self.check_arity(n)
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return _grevlex_key
        k = self.n_elim
        fk = self.front.key_function(k)
        bk = self.back.key_function(n - k)
        return lambda e: fk(e[:k]) + bk(e[k:])

    def __str__(self) -> str:
        if self.kind == "block":
            return "block(%d, %s, %s)" % (self.n_elim, self.front, self.back)
        return self.kind


def _grevlex_key(e: tuple) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


LEX = TermOrder("lex")
GREVLEX = TermOrder("grevlex")


def block_order(n_elim: int, front: TermOrder = GREVLEX, back: TermOrder = GREVLEX) -> TermOrder:
    return TermOrder("block", n_elim, front, back)


@dataclass(frozen=True)
class VarContext:
    """Ordered variable names plus a term order: the identity of a ring."""

    variables: tuple
    order: TermOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names in %r" % (self.variables,))
        for name in self.variables:
            if not isinstance(name, str) or not name.isidentifier():
                raise ValueError("invalid variable name %r" % (name,))
        self.order.check_arity(len(self.variables))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def key(self) -> Callable[[tuple], tuple]:
        return self.order.key_function(self.nvars)

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.variables)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r in ring %r" % (name, self.variables)) from None

    def with_order(self, order: TermOrder) -> "VarContext":
        return VarContext(self.variables, order)

    def gens(self) -> list:
        return [Polynomial.variable(self, v) for v in self.variables]

    def gen(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def __repr__(self) -> str:
        return "VarContext(%s; %s)" % (",".join(self.variables), self.order)


def ring(names: Union[str, Sequence[str]], order: TermOrder = GREVLEX):
    """Build a context and its generators: ``ctx, (x, y) = ring("x y")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    ctx = VarContext(tuple(names), order)
    return ctx, tuple(ctx.gens())


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(operator.add, a, b))


class Polynomial:
    """Immutable sparse polynomial with coefficients in Q."""

    __slots__ = ("ctx", "_terms", "_sorted", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping | None = None):
        self.ctx = ctx
        clean = {}
        n = ctx.nvars
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != n or any(e < 0 for e in mono):
                    raise ValueError("bad monomial %r for ring %r" % (mono, ctx))
                c = rational(coeff)
                if c:
                    clean[mono] = clean.get(mono, _ZERO) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, ctx: VarContext, terms: dict) -> "Polynomial":
        """Trusted constructor: ``terms`` already canonical and owned."""
        p = object.__new__(cls)
        p.ctx = ctx
        p._terms = terms
        p._sorted = None
        p._hash = None
        return p

    @classmethod
    def zero(cls, ctx: VarContext) -> "Polynomial":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx: VarContext, value) -> "Polynomial":
        c = rational(value)
        return cls._raw(ctx, {(0,) * ctx.nvars: c} if c else {})

    @classmethod
    def variable(cls, ctx: VarContext, name: str) -> "Polynomial":
        i = ctx.index(name)
        e = [0] * ctx.nvars
        e[i] = 1
        return cls._raw(ctx, {tuple(e): _ONE})

    @classmethod
    def monomial(cls, ctx: VarContext, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(ctx, {tuple(exps): coeff})

    @classmethod
    def parse(cls, text: str, ctx: VarContext) -> "Polynomial":
        """Parse the canonical text form (``^`` or ``**`` for powers)."""
        return _parse(text, ctx)

    # -- basic access ------------------------------------------------------

    @property
    def terms_dict(self) -> dict:
        """The monomial -> coefficient map (a copy)."""
        return dict(self._terms)

    def terms(self) -> list:
        """(monomial, coefficient) pairs in strictly decreasing term order."""
        if self._sorted is None:
            key = self.ctx.key
            self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
        return list(self._sorted)

    def __iter__(self):
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise ValueError("polynomial %s is not constant" % self)
        return self._terms.get((0,) * self.ctx.nvars, _ZERO)

    def coefficient(self, mono: Sequence[int]) -> mpq:
        return self._terms.get(tuple(mono), _ZERO)

    def leading_term(self) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms()[0]

    def leading_monomial(self) -> tuple:
        return self.leading_term()[0]

    def leading_coefficient(self) -> mpq:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree(self, var: str) -> int:
        i = self.ctx.index(var)
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def support(self) -> set:
        """Names of the variables that actually occur."""
        used = set()
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ctx.variables[i])
        return used

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.ctx, {m: c for m, c in self._terms.items() if sum(m) == d})

    def lowest_degree(self) -> int:
        if not self._terms:
            return -1
        return min(sum(m) for m in self._terms)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient())

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch("cannot combine polynomials from %r and %r" % (self.ctx, other.ctx))
            return other
        try:
            return Polynomial.constant(self.ctx, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        res = dict(self._terms)
        for m, c in other._terms.items():
            v = res.get(m, _ZERO) + c
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Polynomial._raw(self.ctx, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Polynomial.zero(self.ctx)
            return Polynomial._raw(self.ctx, {m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        res: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                res[m] = res.get(m, _ZERO) + c1 * c2
        return Polynomial._raw(self.ctx, {m: c for m, c in res.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._terms == other._terms
        try:
            c = rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def mul_term(self, mono: tuple, coeff) -> "Polynomial":
        c = rational(coeff)
        if not c:
            return Polynomial.zero(self.ctx)
        return Polynomial._raw(self.ctx, {_mono_mul(m, mono): v * c for m, v in self._terms.items()})

    # -- calculus and substitution -----------------------------------------

    def diff(self, var: str) -> "Polynomial":
        """Formal partial derivative with respect to ``var``."""
        i = self.ctx.index(var)
        res = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                nm = m[:i] + (e - 1,) + m[i + 1:]
                res[nm] = c * e
        return Polynomial._raw(self.ctx, res)

    def evaluate(self, point: Mapping) -> mpq:
        """Evaluate at a full assignment ``{name: rational}``."""
        vals = []
        for v in self.ctx.variables:
            if v not in point:
                raise KeyError("no value for variable %r" % v)
            vals.append(rational(point[v]))
        total = _ZERO
        for m, c in self._terms.items():
            t = c
            for x, e in zip(vals, m):
                if e:
                    t = t * x ** e
            total += t
        return total

    def substitute(self, bindings: Mapping, target: VarContext | None = None) -> "Polynomial":
        """Replace variables by polynomials or rationals.

        Variables not bound are kept.  The result lives in ``target`` when
        given, otherwise in the ring of the unbound variables (same order
        kind restricted; block orders fall back to grevlex).
        """
        for name in bindings:
            self.ctx.index(name)
        if target is None:
            free = tuple(v for v in self.ctx.variables if v not in bindings)
            order = self.ctx.order if self.ctx.order.kind != "block" else GREVLEX
            if len(free) == self.ctx.nvars:
                target = self.ctx
            else:
                target = VarContext(free, order if order.kind != "block" else GREVLEX)
        images = []
        for v in self.ctx.variables:
            if v in bindings:
                b = bindings[v]
                if isinstance(b, Polynomial):
                    if b.ctx != target:
                        if set(b.support()) - set(target.variables):
                            raise ContextMismatch(
                                "binding for %r uses variables outside %r" % (v, target.variables)
                            )
                        b = b.to_context(target)
                    images.append(b)
                else:
                    images.append(Polynomial.constant(target, b))
            else:
                if v not in target._index:
                    raise ContextMismatch("unbound variable %r missing from target ring" % v)
                images.append(Polynomial.variable(target, v))
        return _compose(self, images, target)

    def to_context(self, target: VarContext) -> "Polynomial":
        """Re-express in another ring containing every occurring variable."""
        if target == self.ctx:
            return self
        src = self.ctx.variables
        idx = []
        for i, v in enumerate(src):
            j = target._index.get(v)
            idx.append(j)
        n = target.nvars
        res = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i, a in enumerate(m):
                if a:
                    j = idx[i]
                    if j is None:
                        raise ContextMismatch(
                            "variable %r does not exist in %r" % (src[i], target.variables)
                        )
                    e[j] = a
            res[tuple(e)] = c
        return Polynomial._raw(target, res)

    def rename(self, target: VarContext) -> "Polynomial":
        """Same exponents read in a ring of equal arity (positional renaming)."""
        if target.nvars != self.ctx.nvars:
            raise ContextMismatch("rename needs rings of equal arity")
        return Polynomial._raw(target, dict(self._terms))

    def homogenize(self, new_var: str) -> "Polynomial":
        """Homogenize with a new last variable ``new_var``."""
        if new_var in self.ctx.variables:
            raise ValueError("variable %r already exists" % new_var)
        order = self.ctx.order if self.ctx.order.kind != "block" else GREVLEX
        target = VarContext(self.ctx.variables + (new_var,), order)
        d = self.total_degree()
        res = {m + (d - sum(m),): c for m, c in self._terms.items()}
        return Polynomial._raw(target, res)

    def dehomogenize(self, var: str, value=1, keep_variable: bool = False) -> "Polynomial":
        """Substitute ``var = value``; drops ``var`` from the ring unless asked not to."""
        if keep_variable:
            return self.substitute({var: value}, target=self.ctx)
        return self.substitute({var: value})

    def to_univariate(self, var: str | None = None) -> "UnivariatePoly":
        """Dense univariate copy; the polynomial must involve only ``var``."""
        used = self.support()
        if var is None:
            if len(used) > 1:
                raise ValueError("polynomial %s is not univariate" % self)
            var = next(iter(used)) if used else self.ctx.variables[0]
        if used - {var}:
            raise ValueError("polynomial %s involves variables besides %r" % (self, var))
        i = self.ctx.index(var)
        d = max((m[i] for m in self._terms), default=-1)
        coeffs = [_ZERO] * (d + 1)
        for m, c in self._terms.items():
            coeffs[m[i]] = c
        return UnivariatePoly(coeffs)

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "*".join(
                v if e == 1 else "%s^%d" % (v, e) for v, e in zip(self.ctx.variables, m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (format_rational(a), mono)
            if not parts:
                parts.append("-" + body if neg else body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return "Polynomial(%r, %s)" % (",".join(self.ctx.variables), self)


def _compose(p: Polynomial, images: list, target: VarContext) -> Polynomial:
    """Evaluate ``p`` with variable i replaced by ``images[i]``."""
    powers: list = [dict() for _ in images]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        if e not in cache:
            cache[e] = images[i] ** e
        return cache[e]

    acc: dict = {}
    for m, c in p._terms.items():
        term = Polynomial.constant(target, c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        for mm, cc in term._terms.items():
            v = acc.get(mm, _ZERO) + cc
            if v:
                acc[mm] = v
            else:
                acc.pop(mm, None)
    return Polynomial._raw(target, acc)


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def _parse(text: str, ctx: VarContext) -> Polynomial:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError("cannot parse polynomial %r: %s" % (text, exc)) from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Polynomial.constant(ctx, node.value)
        if isinstance(node, ast.Name):
            return Polynomial.variable(ctx, node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if type(node.op) in _BINOPS:
                return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
            if isinstance(node.op, ast.Div):
                den = ev(node.right)
                if not den.is_constant():
                    raise ValueError("division by a non-constant in %r" % text)
                return ev(node.left) / den.constant_value()
            if isinstance(node.op, ast.Pow):
                exp = ev(node.right)
                if not exp.is_constant() or exp.constant_value().denominator != 1:
                    raise ValueError("non-integer exponent in %r" % text)
                return ev(node.left) ** int(exp.constant_value())
        raise ValueError("unsupported syntax in polynomial %r" % text)

    return ev(tree)


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent tuples of length ``n`` and total degree ``d``."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------


class UnivariatePoly:
    """Dense univariate polynomial over Q, coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UnivariatePoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lead(self) -> mpq:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, UnivariatePoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x) -> mpq:
        x = rational(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        other = _as_upoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (_ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (_ZERO,) * (n - len(other.coeffs))
        return UnivariatePoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UnivariatePoly":
        return UnivariatePoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UnivariatePoly":
        return self + (-_as_upoly(other))

    def __rsub__(self, other) -> "UnivariatePoly":
        return _as_upoly(other) - self

    def __mul__(self, other) -> "UnivariatePoly":
        other = _as_upoly(other)
        if not self.coeffs or not other.coeffs:
            return UnivariatePoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UnivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UnivariatePoly":
        out = UnivariatePoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: "UnivariatePoly"):
        other = _as_upoly(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UnivariatePoly(), UnivariatePoly(rem)
        quo = [_ZERO] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quo[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return UnivariatePoly(quo), UnivariatePoly(rem[: len(other.coeffs) - 1])

    def __mod__(self, other) -> "UnivariatePoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other) -> "UnivariatePoly":
        return divmod(self, other)[0]

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly(c * i for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UnivariatePoly":
        if not self.coeffs:
            return self
        return UnivariatePoly(c / self.coeffs[-1] for c in self.coeffs)

    def to_polynomial(self, ctx: VarContext, var: str) -> Polynomial:
        i = ctx.index(var)
        res = {}
        for d, c in enumerate(self.coeffs):
            if c:
                e = [0] * ctx.nvars
                e[i] = d
                res[tuple(e)] = c
        return Polynomial._raw(ctx, res)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        ctx = VarContext(("u",), LEX)
        return str(self.to_polynomial(ctx, "u"))

    def __repr__(self) -> str:
        return "UnivariatePoly([%s])" % ", ".join(format_rational(c) for c in self.coeffs)


def _as_upoly(x) -> UnivariatePoly:
    if isinstance(x, UnivariatePoly):
        return x
    return UnivariatePoly([rational(x)])


def upoly_gcd(f: UnivariatePoly, g: UnivariatePoly) -> UnivariatePoly:
    """Monic gcd (zero if both are zero)."""
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_inverse_mod(a: UnivariatePoly, m: UnivariatePoly) -> UnivariatePoly:
    """Inverse of ``a`` in Q[u]/(m); requires gcd(a, m) = 1."""
    r0, r1 = m, a % m
    s0, s1 = UnivariatePoly(), UnivariatePoly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("polynomial is not invertible modulo %s" % m)
    return (s0 * (1 / r0.lead)) % m


def squarefree_part(f: UnivariatePoly) -> UnivariatePoly:
    if f.degree <= 0:
        return f
    return f // upoly_gcd(f, f.derivative())


def exact_sqrt(f: UnivariatePoly) -> UnivariatePoly | None:
    """Return ``g`` with ``g*g == f`` when ``f`` is a square in Q[u], else None."""
    if not f.coeffs:
        return UnivariatePoly()
    if f.degree % 2:
        return None
    lead = f.lead
    num, den = lead.numerator, lead.denominator
    if num < 0:
        return None
    rn, exact_n = _isqrt_exact(num)
    rd, exact_d = _isqrt_exact(den)
    if not (exact_n and exact_d):
        return None
    m = f.degree // 2
    g = [_ZERO] * (m + 1)
    g[m] = mpq(rn, rd)
    for i in range(m - 1, -1, -1):
        # coefficient of u^(m+i) in g^2 determines g[i]
        target = f.coeffs[m + i]
        acc = sum((g[j] * g[m + i - j] for j in range(i + 1, m)), _ZERO)
        g[i] = (target - acc) / (2 * g[m])
    cand = UnivariatePoly(g)
    return cand if cand * cand == f else None


def _isqrt_exact(n: int):
    from gmpy2 import isqrt

    r = int(isqrt(mpz(n)))
    return r, r * r == n


# ---------------------------------------------------------------------------
# Resultants and Sturm sequences
# ---------------------------------------------------------------------------


def rational_determinant(rows: Sequence[Sequence]) -> mpq:
    """Exact determinant by Gaussian elimination over Q."""
    a = [[rational(x) for x in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = _ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return _ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f = f / p
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return det


def sylvester_matrix(f: UnivariatePoly, g: UnivariatePoly) -> list:
    m, n = f.degree, g.degree
    size = m + n
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([_ZERO] * i + fc + [_ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([_ZERO] * i + gc + [_ZERO] * (size - n - 1 - i))
    return rows


def sylvester_resultant(f: UnivariatePoly, g: UnivariatePoly) -> mpq:
    """Res(f, g) as the determinant of the Sylvester matrix."""
    f, g = _as_upoly(f), _as_upoly(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials is undefined")
    if f.is_zero() or g.is_zero():
        return _ZERO
    if f.degree == 0 and g.degree == 0:
        return _ONE
    if f.degree == 0:
        return f.lead ** g.degree
    if g.degree == 0:
        return g.lead ** f.degree
    return rational_determinant(sylvester_matrix(f, g))


def sturm_sequence(f: UnivariatePoly) -> list:
    seq = [f, f.derivative()]
    while seq[-1].coeffs and seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return [p for p in seq if p.coeffs]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _signs_at(seq: list, x) -> list:
    return [_sign(p(x)) for p in seq]


def _signs_at_infinity(seq: list, positive: bool) -> list:
    out = []
    for p in seq:
        s = _sign(p.lead)
        if not positive and p.degree % 2:
            s = -s
        out.append(s)
    return out


def sturm_real_root_count(f: UnivariatePoly, interval=None) -> int:
    """Number of distinct real roots of ``f`` on the line or on ``[a, b]``."""
    f = _as_upoly(f)
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    g = squarefree_part(f)
    if g.degree <= 0:
        return 0
    seq = sturm_sequence(g)
    if interval is None:
        return _variations(_signs_at_infinity(seq, False)) - _variations(_signs_at_infinity(seq, True))
    a, b = (rational(x) for x in interval)
    if a > b:
        raise ValueError("empty interval [%s, %s]" % (a, b))
    count = _variations(_signs_at(seq, a)) - _variations(_signs_at(seq, b))
    if g(a) == 0:
        count += 1
    return count


def rational_roots(f: UnivariatePoly) -> list:
    """All distinct rational roots, ascending (rational root theorem)."""
    from math import lcm

    f = _as_upoly(f)
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    roots = []
    cs = list(f.coeffs)
    if cs and not cs[0]:
        roots.append(_ZERO)
        while cs and not cs[0]:
            cs.pop(0)
    if len(cs) <= 1:
        return roots
    den = lcm(*(int(c.denominator) for c in cs))
    ints = [int(c * den) for c in cs]
    p = UnivariatePoly(cs)
    for num in _divisors(abs(ints[0])):
        for dd in _divisors(abs(ints[-1])):
            for sgn in (1, -1):
                r = mpq(sgn * num, dd)
                if r not in roots and p(r) == 0:
                    roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> list:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return sorted(out)
