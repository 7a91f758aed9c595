"""Rees presentation ideal, the G+B split of an initial ideal and the
linear-resolution criterion for high powers."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels
from .groebner import (
    GroebnerBasis,
    IdealGens,
    eliminate,
    minimal_generators,
)
from .polycore import (
    DEGREVLEX_XT,
    Monomial,
    MonomialOrder,
    Polynomial,
    RingSpec,
    bidegree,
    format_monomial,
)


def census(bidegrees) -> dict[tuple[int, int], int]:
    """Multiset of bidegrees as a dict sorted by bidegree."""
    return dict(sorted(Counter(bidegrees).items()))


def format_census(c: dict) -> str:
    return ",".join(f"({a},{b}):{n}" for (a, b), n in sorted(c.items()))


@dataclass(frozen=True)
class ReesPresentation:
    base: IdealGens
    d: int
    ring: RingSpec
    P: GroebnerBasis
    mingens: tuple

    @property
    def census(self) -> dict:
        """Bidegree census of a minimal generating set of P."""
        return census(g.bidegree() for g in self.mingens)

    @property
    def gb_census(self) -> dict:
        return census(g.bidegree() for g in self.P.elements)

    @property
    def m(self) -> int:
        return self.ring.tcount

    def ideal(self) -> IdealGens:
        return self.P.ideal()


def check_equigenerated(base: IdealGens) -> int:
    degs = {g.total_degree() for g in base.gens}
    if not base.gens:
        raise ValueError("ideal has no nonzero generators")
    if len(degs) != 1 or not all(g.is_homogeneous() for g in base.gens):
        raise ValueError("ideal must be generated in a single degree")
    return degs.pop()


def rees_presentation(base: IdealGens, order: MonomialOrder = DEGREVLEX_XT) -> ReesPresentation:
    """Kernel P of K[x, t] -> S[u], t_j -> f_j u, for an equigenerated ideal.

    The kernel is found by eliminating a fresh variable y from the ideal
    (t_j - y f_j); t_j follows the listing order of the generators.
    """
    ring = base.ring
    if ring.tcount or ring.auxcount:
        raise ValueError("base ideal must live in K[x] (no t or aux variables)")
    d = check_equigenerated(base)
    m = len(base.gens)
    T = RingSpec(ring.xcount, m)
    E = T.with_aux(1)
    r = ring.xcount
    y = E.nvars - 1
    emb = list(range(r))
    gens = []
    for j, f in enumerate(base.gens):
        tj = Polynomial.monomial(E, E.var(r + j), 1, order)
        fy = f.embed(E, emb, order).mul_term(1, E.var(y))
        gens.append(tj - fy)
    elim = eliminate(IdealGens(E, tuple(gens), order))
    P = GroebnerBasis(T, order, elim.gens)
    mingens = tuple(minimal_generators(elim, P)) if P.elements else ()
    return ReesPresentation(base, d, T, P, mingens)


# ------------------------------------------------------------------ split + criterion


@dataclass(frozen=True)
class LinearSplit:
    ring: RingSpec
    G: tuple
    B: tuple
    order: MonomialOrder
    transform: object = None

    @property
    def t_max(self) -> int:
        return max((bidegree(b, self.ring)[0] for b in self.B), default=0)


def split_linear(in_gp: IdealGens, transform=None) -> LinearSplit:
    """Partition minimal monomial generators by x-degree <= 1 (G) and >= 2 (B)."""
    if not in_gp.is_monomial():
        raise ValueError("split needs a monomial ideal")
    ring = in_gp.ring
    G, B = [], []
    for mono in in_gp.monomials():
        (B if bidegree(mono, ring)[1] >= 2 else G).append(mono)
    return LinearSplit(ring, tuple(G), tuple(B), in_gp.order, transform)


def compositions(total: int, parts: int) -> np.ndarray:
    """All exponent vectors of length ``parts`` summing to ``total`` (colex)."""
    return kernels.compositions(total, parts)


@dataclass
class CriterionReport:
    passes: bool
    k0: int | None
    d: int
    t_max: int
    failures: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    name: str = "Q"

    @property
    def conclusion(self) -> str | None:
        if not self.passes:
            return None
        return f"reg({self.name}^k) = {self.d}k for all k >= {self.k0}"


def criterion(split: LinearSplit, m: int, d: int, name: str = "Q") -> CriterionReport:
    """Check t^alpha * b in G for every b in B and |alpha| = t_max + 1 - tdeg(b).

    On success the initial ideal agrees with G in every t-degree
    k >= t_max + 1, so reg(Q^k) = k d from there on.
    """
    ring = split.ring
    if m != ring.tcount:
        raise ValueError("m must equal the number of t variables")
    if not split.B:
        return CriterionReport(True, 1, d, 0, name=name)
    tp = split.t_max
    r = ring.xcount
    gmat = np.array(split.G, dtype=np.int64).reshape(len(split.G), ring.nvars)
    failures, checks = [], []
    for b in sorted(split.B, key=lambda mono: (bidegree(mono, ring)[0], split.order.key(mono, ring))):
        s = tp + 1 - bidegree(b, ring)[0]
        alphas = compositions(s, m)
        cands = np.zeros((len(alphas), ring.nvars), dtype=np.int64)
        cands[:] = np.array(b, dtype=np.int64)
        cands[:, r:r + m] += alphas
        ok = kernels.rows_in_ideal(gmat, cands)
        checks.append((b, s, len(alphas)))
        for alpha, good in zip(alphas, ok):
            if not good:
                failures.append((b, tuple(int(a) for a in alpha)))
    passes = not failures
    return CriterionReport(passes, tp + 1 if passes else None, d, tp, failures, checks, name)


def slice_agreement(split: LinearSplit, k: int, jmax: int = 6) -> bool:
    """Whether (G+B) and G have the same monomials in bidegrees (k, 0..jmax)."""
    ring = split.ring
    r, m = ring.xcount, ring.tcount
    full = np.array(split.G + split.B, dtype=np.int64).reshape(-1, ring.nvars)
    gmat = np.array(split.G, dtype=np.int64).reshape(-1, ring.nvars)
    tpart = compositions(k, m)
    for j in range(jmax + 1):
        xpart = compositions(j, r)
        monos = np.zeros((len(tpart) * len(xpart), ring.nvars), dtype=np.int64)
        monos[:, :r] = np.repeat(xpart, len(tpart), axis=0)
        monos[:, r:] = np.tile(tpart, (len(xpart), 1))
        if not np.array_equal(kernels.rows_in_ideal(full, monos), kernels.rows_in_ideal(gmat, monos)):
            return False
    return True


def format_failure(b: Monomial, alpha: tuple, ring: RingSpec) -> str:
    r = ring.xcount
    e = list(b)
    for i, a in enumerate(alpha):
        e[r + i] += a
    return f"{format_monomial(b, ring)} * t^{list(alpha)} = {format_monomial(tuple(e), ring)} not in G"


# ------------------------------------------------------------------ strands and bounds


def strand_of_free(shifts, k: int, m: int) -> list[tuple[int, int]]:
    """Degree-k strand of a bigraded free module sum T(-a,-b)^mult.

    Each summand gives S(-b)^(mult * C(m-1+k-a, m-1)) when k >= a, nothing otherwise.
    """
    if m < 1:
        raise ValueError("need at least one t variable")
    out: dict = {}
    for a, b, mult in shifts:
        if k >= a and mult:
            out[b] = out.get(b, 0) + mult * comb(m - 1 + k - a, m - 1)
    return sorted((b, n) for b, n in out.items() if n)


def xreg_bound(in_p: IdealGens, n: int, d: int) -> int:
    """Upper bound n*d + (t-1)*L on reg(I^n) from an initial ideal of P.

    t is the largest x-degree of a generator (at least 1); L bounds the
    projective dimension of T/in(P) by both the Taylor length (number of
    generators) and the number of variables.
    """
    if not in_p.is_monomial():
        raise ValueError("bound needs a monomial initial ideal")
    if n < 1:
        raise ValueError("n must be positive")
    ring = in_p.ring
    monos = in_p.monomials()
    t = max([bidegree(mono, ring)[1] for mono in monos] + [1])
    L = min(len(monos), ring.nvars)
    return n * d + (t - 1) * L
