"""Exact sparse polynomials over Q in the two-block ring K[x, t] (plus aux y).

Monomials are plain tuples of non-negative ints laid out as
``(x1..xr, t1..tm, y..)``.  Coefficients are ``gmpy2.mpq``.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

Rational = type(mpq())
Monomial = tuple

LESS, EQUAL, GREATER = -1, 0, 1


class RingMismatchError(ValueError):
    """Operands live in different rings."""


@dataclass(frozen=True)
class RingSpec:
    """Variable layout x1..xr, t1..tm, then aux variables."""

    xcount: int
    tcount: int = 0
    auxcount: int = 0

    def __post_init__(self):
        if self.xcount < 1:
            raise ValueError("xcount must be positive")
        if self.tcount < 0 or self.auxcount < 0:
            raise ValueError("tcount and auxcount must be non-negative")

    @property
    def nvars(self) -> int:
        return self.xcount + self.tcount + self.auxcount

    @property
    def x_range(self) -> range:
        return range(0, self.xcount)

    @property
    def t_range(self) -> range:
        return range(self.xcount, self.xcount + self.tcount)

    @property
    def aux_range(self) -> range:
        return range(self.xcount + self.tcount, self.nvars)

    @property
    def names(self) -> tuple[str, ...]:
        return _names(self)

    def index(self, name: str) -> int:
        try:
            return _name_index(self)[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def block_of(self, i: int) -> str:
        if i < self.xcount:
            return "x"
        if i < self.xcount + self.tcount:
            return "t"
        return "aux"

    def with_aux(self, k: int = 1) -> "RingSpec":
        return RingSpec(self.xcount, self.tcount, k)

    def with_t(self, m: int) -> "RingSpec":
        return RingSpec(self.xcount, m, self.auxcount)

    def one(self) -> Monomial:
        return (0,) * self.nvars

    def var(self, i: int) -> Monomial:
        e = [0] * self.nvars
        e[i] = 1
        return tuple(e)


@lru_cache(maxsize=None)
def _names(ring: RingSpec) -> tuple[str, ...]:
    xs = [f"x{i + 1}" for i in range(ring.xcount)]
    ts = [f"t{j + 1}" for j in range(ring.tcount)]
    if ring.auxcount == 1:
        ys = ["y"]
    else:
        ys = [f"y{k + 1}" for k in range(ring.auxcount)]
    return tuple(xs + ts + ys)


@lru_cache(maxsize=None)
def _name_index(ring: RingSpec) -> dict[str, int]:
    return {n: i for i, n in enumerate(_names(ring))}


# ---------------------------------------------------------------- orders


@dataclass(frozen=True)
class MonomialOrder:
    """Lex or DegRevLex on one variable sequence.

    ``precedence`` decides whether the x block or the t block comes first
    in the sequence.  ``aux="first"`` puts a Lex block on the aux
    variables in front of everything (an elimination order); the rest is
    compared with ``kind`` on the non-aux variables only.
    """

    kind: str = "degrevlex"
    precedence: str = "xt"
    aux: str = "none"

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.precedence not in ("xt", "tx"):
            raise ValueError(f"unknown precedence {self.precedence!r}")
        if self.aux not in ("none", "first"):
            raise ValueError(f"unknown aux placement {self.aux!r}")

    def sequence(self, ring: RingSpec) -> tuple[int, ...]:
        """Variable indices, greatest variable first."""
        xs, ts = list(ring.x_range), list(ring.t_range)
        body = xs + ts if self.precedence == "xt" else ts + xs
        return tuple(list(ring.aux_range) + body) if self.aux == "none" else tuple(body)

    def keyer(self, ring: RingSpec) -> "Keyer":
        return _keyer(self, ring)

    def key(self, mono: Monomial, ring: RingSpec) -> tuple:
        return _keyer(self, ring).key(mono)

    def label(self) -> str:
        name = {"lex": "Lex", "degrevlex": "DegRevLex"}[self.kind]
        return f"{name}({'x>t' if self.precedence == 'xt' else 't>x'})"

    def elimination(self) -> "MonomialOrder":
        return MonomialOrder(self.kind, self.precedence, "first")


DEGREVLEX_XT = MonomialOrder("degrevlex", "xt")
DEGREVLEX_TX = MonomialOrder("degrevlex", "tx")
LEX_XT = MonomialOrder("lex", "xt")
LEX_TX = MonomialOrder("lex", "tx")
ALL_ORDERS = (DEGREVLEX_XT, DEGREVLEX_TX, LEX_XT, LEX_TX)


class Keyer:
    """Memoized sort keys: ``key(a) > key(b)`` iff ``a > b`` in the order."""

    __slots__ = ("key", "neg", "_kmemo", "_nmemo")

    def __init__(self, fn: Callable[[Monomial], tuple]):
        kmemo: dict = {}
        nmemo: dict = {}
        self._kmemo, self._nmemo = kmemo, nmemo

        def key(m):
            k = kmemo.get(m)
            if k is None:
                k = kmemo[m] = fn(m)
            return k

        def neg(m):
            k = nmemo.get(m)
            if k is None:
                k = nmemo[m] = tuple([-c for c in key(m)])
            return k

        self.key = key
        self.neg = neg


@lru_cache(maxsize=None)
def _keyer(order: MonomialOrder, ring: RingSpec) -> Keyer:
    seq = order.sequence(ring)
    rev = seq[::-1]
    aux = tuple(ring.aux_range)
    if order.kind == "lex":
        def base(m):
            return tuple([m[i] for i in seq])
    else:
        def base(m):
            return (sum([m[i] for i in seq]),) + tuple([-m[i] for i in rev])
    if order.aux == "first" and aux:
        def fn(m):
            return tuple([m[i] for i in aux]) + base(m)
    else:
        fn = base
    return Keyer(fn)


def compare(a: Monomial, b: Monomial, order: MonomialOrder, ring: RingSpec) -> int:
    """Return LESS, EQUAL or GREATER comparing ``a`` with ``b``."""
    if len(a) != ring.nvars or len(b) != ring.nvars:
        raise RingMismatchError("monomials do not match the ring")
    ka, kb = order.key(a, ring), order.key(b, ring)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------- monomials


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(map(operator.le, a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def bidegree(mono: Monomial, ring: RingSpec) -> tuple[int, int]:
    """(t-degree, x-degree) of a monomial; undefined while aux is present."""
    if any(mono[i] for i in ring.aux_range):
        raise ValueError("bidegree undefined for monomials with aux exponents")
    r = ring.xcount
    return sum(mono[r:r + ring.tcount]), sum(mono[:r])


def format_monomial(mono: Monomial, ring: RingSpec) -> str:
    parts = []
    for name, e in zip(ring.names, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------- polynomials


def _coerce(c) -> Rational:
    if isinstance(c, Rational):
        return c
    return mpq(c)


class Polynomial:
    """Immutable sparse polynomial; terms are listed in decreasing order.

    ``order`` only fixes the canonical term listing and the leading term.
    Equality ignores it.
    """

    __slots__ = ("ring", "order", "_d", "_sorted", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping | Iterable = (), order: MonomialOrder = DEGREVLEX_XT):
        d: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else ((m, c) for c, m in terms)
        n = ring.nvars
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != n or min(m, default=0) < 0:
                raise RingMismatchError(f"bad exponent vector {m} for ring with {n} variables")
            c = _coerce(c)
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        self._init(ring, order, d)

    def _init(self, ring, order, d):
        self.ring = ring
        self.order = order
        self._d = d
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, d: dict, order: MonomialOrder) -> "Polynomial":
        # trusted constructor: d holds no zeros and the right-length tuples
        p = cls.__new__(cls)
        p._init(ring, order, d)
        return p

    @classmethod
    def zero(cls, ring, order=DEGREVLEX_XT):
        return cls._raw(ring, {}, order)

    @classmethod
    def constant(cls, ring, c, order=DEGREVLEX_XT):
        c = _coerce(c)
        return cls._raw(ring, {ring.one(): c} if c else {}, order)

    @classmethod
    def monomial(cls, ring, mono, coeff=1, order=DEGREVLEX_XT):
        return cls(ring, {tuple(mono): coeff}, order)

    @classmethod
    def variable(cls, ring, name, order=DEGREVLEX_XT):
        return cls._raw(ring, {ring.var(ring.index(name)): mpq(1)}, order)

    # -- access
    def as_dict(self) -> dict:
        return dict(self._d)

    @property
    def monomials(self) -> tuple:
        if self._sorted is None:
            k = self.order.keyer(self.ring).key
            self._sorted = tuple(sorted(self._d, key=k, reverse=True))
        return self._sorted

    @property
    def terms(self) -> list[tuple[Rational, Monomial]]:
        d = self._d
        return [(d[m], m) for m in self.monomials]

    def coefficient(self, mono) -> Rational:
        return self._d.get(tuple(mono), mpq(0))

    def __len__(self):
        return len(self._d)

    def __iter__(self):
        return iter(self.terms)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    @property
    def lm(self) -> Monomial:
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        if self._sorted is not None:
            return self._sorted[0]
        return max(self._d, key=self.order.keyer(self.ring).key)

    @property
    def lc(self) -> Rational:
        return self._d[self.lm]

    @property
    def leading_term(self) -> tuple[Rational, Monomial]:
        m = self.lm
        return self._d[m], m

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def total_degree(self) -> int:
        return max((sum(m) for m in self._d), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def bidegrees(self) -> set[tuple[int, int]]:
        return {bidegree(m, self.ring) for m in self._d}

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self) -> tuple[int, int]:
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError("polynomial is not bihomogeneous")
        return next(iter(bd))

    def uses_aux(self) -> bool:
        aux = self.ring.aux_range
        return any(m[i] for m in self._d for i in aux)

    # -- structure changes
    def reorder(self, order: MonomialOrder) -> "Polynomial":
        return Polynomial._raw(self.ring, self._d, order)

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        inv = 1 / self.lc
        return Polynomial._raw(self.ring, {m: c * inv for m, c in self._d.items()}, self.order)

    def embed(self, ring: RingSpec, index_map: Sequence[int], order: MonomialOrder | None = None) -> "Polynomial":
        """Move into ``ring``; variable i goes to position ``index_map[i]``."""
        n = ring.nvars
        d = {}
        for m, c in self._d.items():
            e = [0] * n
            for i, a in enumerate(m):
                if a:
                    e[index_map[i]] += a
            d[tuple(e)] = c
        return Polynomial._raw(ring, d, order or self.order)

    def substitute(self, images: Sequence["Polynomial"], ring: RingSpec | None = None) -> "Polynomial":
        """Replace variable i by ``images[i]`` (all images in one ring)."""
        target = ring or images[0].ring
        out = Polynomial.zero(target, self.order)
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        for m, c in self._d.items():
            term = Polynomial.constant(target, c, self.order)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    # -- arithmetic
    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.ring, other, self.order)

    def __add__(self, other):
        other = self._lift(other)
        d = dict(self._d)
        for m, c in other._d.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                del d[m]
        return Polynomial._raw(self.ring, d, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._d.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        c = _coerce(c)
        if not c:
            return Polynomial.zero(self.ring, self.order)
        return Polynomial._raw(self.ring, {m: a * c for m, a in self._d.items()}, self.order)

    def mul_term(self, c, mono: Monomial) -> "Polynomial":
        c = _coerce(c)
        if not c:
            return Polynomial.zero(self.ring, self.order)
        return Polynomial._raw(self.ring, {mono_mul(m, mono): a * c for m, a in self._d.items()}, self.order)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(map(operator.add, m1, m2))
                s = d.get(m, 0) + c1 * c2
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return Polynomial._raw(self.ring, d, self.order)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.ring, 1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if not self._d:
            return other == 0
        return self._d == {self.ring.one(): other}

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_coefficient(c: Rational) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: terms in decreasing order, ``c*m`` with ``+``/``-``."""
    if p.is_zero():
        return "0"
    out = []
    for i, (c, m) in enumerate(p.terms):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(m, p.ring)
        if mono == "1":
            body = format_coefficient(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coefficient(a)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
