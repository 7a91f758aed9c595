"""Normal forms, Buchberger's algorithm, elimination, initial ideals, powers."""
from __future__ import annotations

import heapq
import itertools
import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .polycore import (
    DEGREVLEX_XT,
    Monomial,
    MonomialOrder,
    Polynomial,
    RingMismatchError,
    RingSpec,
    divides,
)

_add = operator.add
_sub = operator.sub
_le = operator.le


@dataclass(frozen=True)
class IdealGens:
    """A generator list; listing order matters (it fixes t-indexing)."""

    ring: RingSpec
    gens: tuple
    order: MonomialOrder = DEGREVLEX_XT

    def __post_init__(self):
        gens = []
        for g in self.gens:
            if g.ring != self.ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if not g.is_zero():
                gens.append(g.reorder(self.order))
        object.__setattr__(self, "gens", tuple(gens))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def monomials(self) -> list[Monomial]:
        if not self.is_monomial():
            raise ValueError("ideal is not monomial")
        return [g.lm for g in self.gens]

    def reorder(self, order: MonomialOrder) -> "IdealGens":
        return IdealGens(self.ring, self.gens, order)

    @classmethod
    def from_monomials(cls, ring, monos, order=DEGREVLEX_XT) -> "IdealGens":
        return cls(ring, tuple(Polynomial.monomial(ring, m, 1, order) for m in monos), order)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic, sorted ascending by leading monomial."""

    ring: RingSpec
    order: MonomialOrder
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.lm for g in self.elements]

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.elements, self.order).is_zero()

    def ideal(self) -> IdealGens:
        return IdealGens(self.ring, self.elements, self.order)


# ------------------------------------------------------------- engine


class _Ctx:
    """Per-computation caches for one (ring, order)."""

    def __init__(self, ring: RingSpec, order: MonomialOrder):
        self.ring = ring
        self.order = order
        keyer = order.keyer(ring)
        self.key = keyer.key
        self.neg = keyer.neg
        self._masks: dict = {}

    def mask(self, m: Monomial) -> int:
        v = self._masks.get(m)
        if v is None:
            v = 0
            for i, e in enumerate(m):
                if e:
                    v |= 1 << i
            self._masks[m] = v
        return v

    def lead(self, d: dict) -> Monomial:
        return max(d, key=self.key)


class _Reducer:
    __slots__ = ("lm", "mask", "tail", "sugar", "deg")

    def __init__(self, ctx: _Ctx, d: dict, sugar: int):
        lm = ctx.lead(d)
        inv = 1 / d[lm]
        self.lm = lm
        self.mask = ctx.mask(lm)
        self.tail = [(m, c * inv) for m, c in d.items() if m != lm]
        self.sugar = sugar
        self.deg = sum(lm)

    def as_dict(self) -> dict:
        d = {m: c for m, c in self.tail}
        d[self.lm] = mpq(1)
        return d


def _find(ctx: _Ctx, m: Monomial, reducers: Sequence[_Reducer]):
    mm = ctx.mask(m)
    for r in reducers:
        if not (r.mask & ~mm) and all(map(_le, r.lm, m)):
            return r
    return None


def _reduce(ctx: _Ctx, d: dict, reducers: Sequence[_Reducer], full: bool = True) -> dict:
    """Remainder of ``d`` on division by monic ``reducers``."""
    if not reducers or not d:
        return dict(d)
    neg = ctx.neg
    p = dict(d)
    heap = [(neg(m), m) for m in p]
    heapq.heapify(heap)
    rem: dict = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = pop(heap)[1]
        c = p.pop(m, None)
        if c is None:
            continue
        r = _find(ctx, m, reducers)
        if r is None:
            rem[m] = c
            if not full:
                rem.update(p)
                return rem
            continue
        q = tuple(map(_sub, m, r.lm))
        for tm, tc in r.tail:
            mm = tuple(map(_add, tm, q))
            s = p.get(mm)
            if s is None:
                p[mm] = -c * tc
                push(heap, (neg(mm), mm))
            else:
                s -= c * tc
                if s:
                    p[mm] = s
                else:
                    del p[mm]
    return rem


def _spoly(a: _Reducer, b: _Reducer, lcm: Monomial) -> dict:
    qa = tuple(map(_sub, lcm, a.lm))
    qb = tuple(map(_sub, lcm, b.lm))
    d: dict = {}
    for m, c in a.tail:
        d[tuple(map(_add, m, qa))] = c
    for m, c in b.tail:
        mm = tuple(map(_add, m, qb))
        s = d.get(mm, 0) - c
        if s:
            d[mm] = s
        else:
            d.pop(mm, None)
    return d


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def buchberger(ctx: _Ctx, inputs: Iterable[dict]) -> list[dict]:
    """Reduced monic Groebner basis (as dicts) sorted ascending by LM.

    Normal pair selection (sugar degree, then the lcm in the order, then
    indices) with the Gebauer-Moeller criteria.
    """
    polys: list[_Reducer] = []
    active: list[int] = []
    pairs: dict = {}
    heap: list = []
    key = ctx.key
    counter = itertools.count()

    def add(d: dict, sugar: int):
        h = len(polys)
        r = _Reducer(ctx, d, sugar)
        polys.append(r)
        lh = r.lm
        lcms = {g: tuple(map(max, lh, polys[g].lm)) for g in active}
        masks = {g: ctx.mask(L) for g, L in lcms.items()}
        cand = list(active)
        kept = []
        for idx, g1 in enumerate(cand):
            L1, M1 = lcms[g1], masks[g1]
            if _coprime(lh, polys[g1].lm):
                kept.append(g1)
                continue
            dominated = False
            for g2 in itertools.chain(cand[idx + 1:], kept):
                if not (masks[g2] & ~M1) and all(map(_le, lcms[g2], L1)):
                    dominated = True
                    break
            if not dominated:
                kept.append(g1)
        new_pairs = [g for g in kept if not _coprime(lh, polys[g].lm)]
        hm = r.mask
        for pid in list(pairs):
            i, j, L, Lm = pairs[pid]
            if not (hm & ~Lm) and all(map(_le, lh, L)):
                if tuple(map(max, polys[i].lm, lh)) != L and tuple(map(max, polys[j].lm, lh)) != L:
                    del pairs[pid]
        for g in new_pairs:
            L = lcms[g]
            a, b = polys[g], r
            sug = max(a.sugar + sum(L) - a.deg, b.sugar + sum(L) - b.deg)
            pid = next(counter)
            pairs[pid] = (g, h, L, masks[g])
            heapq.heappush(heap, ((sug, key(L), g, h), pid))
        active[:] = [g for g in active if (hm & ~polys[g].mask) or not all(map(_le, lh, polys[g].lm))]
        active.append(h)

    start = sorted((d for d in inputs if d), key=lambda d: (max(sum(m) for m in d), key(ctx.lead(d))))
    for d in start:
        rem = _reduce(ctx, d, [polys[g] for g in active])
        if rem:
            add(rem, max(sum(m) for m in d))

    while heap:
        (sug, _, i, j), pid = heapq.heappop(heap)
        entry = pairs.pop(pid, None)
        if entry is None:
            continue
        s = _spoly(polys[i], polys[j], entry[2])
        if not s:
            continue
        rem = _reduce(ctx, s, [polys[g] for g in active])
        if rem:
            add(rem, sug)

    basis = [polys[g] for g in active]
    out = []
    for idx, r in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = _reduce(ctx, dict(r.tail), others)
        tail[r.lm] = mpq(1)
        out.append(tail)
    out.sort(key=lambda d: key(ctx.lead(d)))
    return out


# ------------------------------------------------------------- public API


def _check_same_ring(ring: RingSpec, polys: Iterable[Polynomial]):
    for p in polys:
        if p.ring != ring:
            raise RingMismatchError("polynomials live in different rings")


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``basis``."""
    order = order or f.order
    _check_same_ring(f.ring, basis)
    ctx = _Ctx(f.ring, order)
    reducers = [_Reducer(ctx, b.as_dict(), b.total_degree()) for b in basis if not b.is_zero()]
    return Polynomial._raw(f.ring, _reduce(ctx, f.as_dict(), reducers), order)


def reduced_groebner(ideal: IdealGens, order: MonomialOrder | None = None) -> GroebnerBasis:
    """The reduced Groebner basis of ``ideal`` under ``order`` (default: the ideal's)."""
    order = order or ideal.order
    ctx = _Ctx(ideal.ring, order)
    out = buchberger(ctx, [g.as_dict() for g in ideal.gens])
    elems = tuple(Polynomial._raw(ideal.ring, d, order) for d in out)
    return GroebnerBasis(ideal.ring, order, elems)


def eliminate(ideal: IdealGens, block: str = "aux") -> IdealGens:
    """Intersect with the subring without aux variables.

    Uses a Lex block on the aux variables in front of the ideal's own
    order; the result is the reduced basis of the intersection under that
    restricted order, living in the ring without aux.
    """
    if block != "aux":
        raise ValueError("only the aux block can be eliminated")
    ring = ideal.ring
    if ring.auxcount < 1:
        raise ValueError("ring has no aux variables to eliminate")
    base = MonomialOrder(ideal.order.kind, ideal.order.precedence, "none")
    gb = reduced_groebner(ideal, base.elimination())
    target = ring.with_aux(0)
    keep = [g for g in gb.elements if not g.uses_aux()]
    n = target.nvars
    gens = tuple(Polynomial._raw(target, {m[:n]: c for m, c in g.as_dict().items()}, base) for g in keep)
    return IdealGens(target, gens, base)


def minimalize_monomials(monos: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators of a monomial ideal, in first-seen order."""
    uniq = list(dict.fromkeys(monos))
    by_deg = sorted(uniq, key=sum)
    kept: list[Monomial] = []
    for m in by_deg:
        if not any(divides(k, m) for k in kept):
            kept.append(m)
    keep = set(kept)
    return [m for m in uniq if m in keep]


def ideal_product(a: IdealGens, b: IdealGens) -> IdealGens:
    """Pairwise products, duplicates removed (minimalized for monomial inputs)."""
    if a.ring != b.ring:
        raise RingMismatchError("ideals live in different rings")
    prods = list(dict.fromkeys(f * g for f in a.gens for g in b.gens))
    if all(p.is_monomial() for p in prods):
        monos = minimalize_monomials([p.lm for p in prods])
        return IdealGens.from_monomials(a.ring, monos, a.order)
    return IdealGens(a.ring, tuple(prods), a.order)


def ideal_power(ideal: IdealGens, k: int) -> IdealGens:
    """Generators of ``ideal**k`` from all k-fold products (multisets)."""
    if k < 1:
        raise ValueError("power must be at least 1")
    gens = ideal.gens
    prods = []
    for combo in itertools.combinations_with_replacement(range(len(gens)), k):
        p = gens[combo[0]]
        for i in combo[1:]:
            p = p * gens[i]
        prods.append(p)
    prods = list(dict.fromkeys(prods))
    if all(p.is_monomial() for p in prods):
        monos = minimalize_monomials([p.lm for p in prods])
        return IdealGens.from_monomials(ideal.ring, monos, ideal.order)
    return IdealGens(ideal.ring, tuple(prods), ideal.order)


def initial_ideal(ideal: IdealGens, order: MonomialOrder | None = None) -> IdealGens:
    """Minimal monomial generators of in(I), ascending in the order."""
    order = order or ideal.order
    if ideal.is_monomial():
        monos = minimalize_monomials(g.lm for g in ideal.gens)
        key = order.keyer(ideal.ring).key
        return IdealGens.from_monomials(ideal.ring, sorted(monos, key=key), order)
    gb = reduced_groebner(ideal, order)
    return IdealGens.from_monomials(ideal.ring, gb.leading_monomials, order)


def _echelon_insert(ctx: _Ctx, rows: dict, v: dict) -> bool:
    """Reduce ``v`` against monic pivot rows keyed by leading monomial; insert if nonzero."""
    v = dict(v)
    while v:
        lead = ctx.lead(v)
        row = rows.get(lead)
        if row is None:
            inv = 1 / v[lead]
            rows[lead] = {m: c * inv for m, c in v.items()}
            return True
        c = v[lead]
        for m, a in row.items():
            s = v.get(m, 0) - c * a
            if s:
                v[m] = s
            else:
                v.pop(m, None)
    return False


def minimal_generators(ideal: IdealGens, basis: GroebnerBasis | None = None) -> list[Polynomial]:
    """A minimal homogeneous generating set, chosen degree by degree.

    Candidates are the reduced Groebner basis elements.  A candidate of
    degree D is kept when its normal form modulo the kept generators of
    lower degree is linearly independent of the other kept degree-D forms.
    """
    if not all(g.is_homogeneous() for g in ideal.gens):
        raise ValueError("minimal generators need a homogeneous ideal")
    order = ideal.order
    basis = basis or reduced_groebner(ideal, order)
    ctx = _Ctx(ideal.ring, order)
    cands = sorted(basis.elements, key=lambda g: (g.total_degree(), ctx.key(g.lm)))
    chosen: list[Polynomial] = []
    for deg, group in itertools.groupby(cands, key=lambda g: g.total_degree()):
        lower = buchberger(ctx, [g.as_dict() for g in chosen]) if chosen else []
        reducers = [_Reducer(ctx, d, deg) for d in lower]
        rows: dict = {}
        for g in group:
            nf = _reduce(ctx, g.as_dict(), reducers)
            if nf and _echelon_insert(ctx, rows, nf):
                chosen.append(g)
    return chosen
