"""Block-linear changes of coordinates g = g1 x g2 on K[x, t] and a seeded
search for sparse upper-triangular ones that make the criterion pass."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .groebner import IdealGens, initial_ideal
from .parsing import parse_polynomial
from .polycore import MonomialOrder, Polynomial, RingSpec, format_polynomial
from .rees import CriterionReport, LinearSplit, ReesPresentation, criterion, split_linear


class SingularTransformError(ValueError):
    pass


def _det(mat) -> mpq:
    a = [[mpq(v) for v in row] for row in mat]
    n = len(a)
    det = mpq(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return mpq(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


def _inverse(mat):
    n = len(mat)
    a = [[mpq(v) for v in row] + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise SingularTransformError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def _identity(n):
    return tuple(tuple(mpq(int(i == j)) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class BiTransform:
    """Column j of ``xmap`` holds the image of x_(j+1); same for ``tmap``."""

    xmap: tuple
    tmap: tuple

    def __post_init__(self):
        xm = tuple(tuple(mpq(v) for v in row) for row in self.xmap)
        tm = tuple(tuple(mpq(v) for v in row) for row in self.tmap)
        object.__setattr__(self, "xmap", xm)
        object.__setattr__(self, "tmap", tm)
        for name, mat in (("x", xm), ("t", tm)):
            if any(len(row) != len(mat) for row in mat):
                raise ValueError(f"{name}-map must be square")
            if mat and _det(mat) == 0:
                raise SingularTransformError(f"{name}-map is singular")

    @classmethod
    def identity(cls, r: int, m: int) -> "BiTransform":
        return cls(_identity(r), _identity(m))

    @classmethod
    def from_entries(cls, entries, r: int, m: int) -> "BiTransform":
        """Build from ``(var, image text)`` pairs; unlisted variables are fixed."""
        ring = RingSpec(r, m)
        xm = [list(row) for row in _identity(r)]
        tm = [list(row) for row in _identity(m)]
        seen = set()
        for var, image in entries:
            if var in seen:
                raise ValueError(f"variable {var} mapped twice")
            seen.add(var)
            block, idx = var[0], int(var[1:]) - 1
            size = r if block == "x" else m
            if not 0 <= idx < size:
                raise ValueError(f"variable {var} is outside the ring")
            poly = parse_polynomial(image, ring) if isinstance(image, str) else image
            mat = xm if block == "x" else tm
            col = [mpq(0)] * size
            for c, mono in poly.terms:
                if sum(mono) != 1:
                    raise ValueError(f"image of {var} must be a linear form")
                v = mono.index(1)
                if ring.block_of(v) != block:
                    raise ValueError(f"image of {var} must stay in the {block}-block")
                col[v - (0 if block == "x" else r)] = c
            for i in range(size):
                mat[i][idx] = col[i]
        return cls(tuple(map(tuple, xm)), tuple(map(tuple, tm)))

    @property
    def r(self) -> int:
        return len(self.xmap)

    @property
    def m(self) -> int:
        return len(self.tmap)

    def is_identity(self) -> bool:
        return self.xmap == _identity(self.r) and self.tmap == _identity(self.m)

    def determinant(self) -> mpq:
        return _det(self.xmap) * _det(self.tmap)

    def inverse(self) -> "BiTransform":
        return BiTransform(_inverse(self.xmap), _inverse(self.tmap))

    def images(self, ring: RingSpec, order: MonomialOrder) -> list[Polynomial]:
        if ring.xcount != self.r or ring.tcount != self.m or ring.auxcount:
            raise ValueError("transform does not match the ring")
        out = []
        for block, mat, offset in (("x", self.xmap, 0), ("t", self.tmap, self.r)):
            n = len(mat)
            for j in range(n):
                d = {ring.var(offset + i): mat[i][j] for i in range(n) if mat[i][j]}
                out.append(Polynomial._raw(ring, d, order))
        return out

    def entries(self) -> list[tuple[str, str]]:
        """Non-identity columns as ``(var, image)`` map entries."""
        ring = RingSpec(self.r, self.m)
        out = []
        for mat, prefix, offset in ((self.xmap, "x", 0), (self.tmap, "t", self.r)):
            ident = _identity(len(mat))
            for j in range(len(mat)):
                col = [mat[i][j] for i in range(len(mat))]
                if col != [ident[i][j] for i in range(len(mat))]:
                    d = {ring.var(offset + i): c for i, c in enumerate(col) if c}
                    img = Polynomial._raw(ring, d, MonomialOrder("lex", "xt"))
                    out.append((f"{prefix}{j + 1}", format_polynomial(img)))
        return out

    def to_map_text(self) -> str:
        return "".join(f"{v} -> {img}\n" for v, img in self.entries())


def apply_bitransform(ideal: IdealGens, g: BiTransform) -> IdealGens:
    """Substitute every x_i and t_j by its image under ``g``."""
    ring = ideal.ring
    images = g.images(ring, ideal.order)
    return IdealGens(ring, tuple(f.substitute(images, ring) for f in ideal.gens), ideal.order)


def transformed_split(pres: ReesPresentation, order: MonomialOrder, g: BiTransform | None = None) -> LinearSplit:
    """in(g(P)) under ``order`` split into G + B."""
    ideal = pres.ideal().reorder(order)
    if g is not None and not g.is_identity():
        ideal = apply_bitransform(ideal, g)
    in_gp = initial_ideal(ideal, order)
    return split_linear(in_gp, g)


# ------------------------------------------------------------------ search


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_candidates: int = 20
    max_offdiag_per_block: int = 2
    coefficient_pool: tuple = (1,)
    dense: bool = False
    batch_size: int = 4

    def __post_init__(self):
        if self.max_candidates < 0:
            raise ValueError("max_candidates must be non-negative")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")
        if self.max_offdiag_per_block < 0:
            raise ValueError("max_offdiag_per_block must be non-negative")
        if not self.coefficient_pool or any(mpq(c) == 0 for c in self.coefficient_pool):
            raise ValueError("coefficient pool must be nonempty and nonzero")


def _random_block(rng: np.random.Generator, n: int, cfg: SearchConfig):
    mat = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    pool = [mpq(c) for c in cfg.coefficient_pool]
    if cfg.dense:
        # every column gets random pool coefficients above the unit diagonal
        for j in range(n):
            for i in range(j):
                mat[i][j] = pool[int(rng.integers(len(pool)))]
        return mat
    slots = [(i, j) for j in range(n) for i in range(j)]
    if not slots:
        return mat
    k = int(rng.integers(0, min(cfg.max_offdiag_per_block, len(slots)) + 1))
    for s in rng.choice(len(slots), size=k, replace=False) if k else []:
        i, j = slots[int(s)]
        mat[i][j] = pool[int(rng.integers(len(pool)))]
    return mat


def candidate_transforms(r: int, m: int, cfg: SearchConfig) -> list[BiTransform]:
    """The seeded candidate sequence (upper triangular, unit diagonal)."""
    rng = np.random.default_rng(cfg.seed)
    out = []
    for _ in range(cfg.max_candidates):
        out.append(BiTransform(_random_block(rng, r, cfg), _random_block(rng, m, cfg)))
    return out


@dataclass
class SearchResult:
    transform: BiTransform | None
    report: CriterionReport | None
    split: LinearSplit | None
    log: list = field(default_factory=list)


def search_transform(
    pres: ReesPresentation,
    order: MonomialOrder,
    cfg: SearchConfig,
    candidates: list[BiTransform] | None = None,
    name: str = "Q",
) -> SearchResult:
    """Try ``candidates`` (if given) and then the seeded ones, in batches.

    The first batch containing a passing candidate decides: the passer with
    the smallest k0 wins, ties going to the lower index.  The budget
    ``cfg.max_candidates`` counts every evaluated candidate.
    """
    r, m = pres.ring.xcount, pres.ring.tcount
    queue = list(candidates or []) + candidate_transforms(r, m, cfg)
    queue = queue[: cfg.max_candidates]
    log = []
    for start in range(0, len(queue), cfg.batch_size):
        best = None
        for idx in range(start, min(start + cfg.batch_size, len(queue))):
            g = queue[idx]
            split = transformed_split(pres, order, g)
            rep = criterion(split, m, pres.d, name)
            log.append({
                "index": idx,
                "map": [f"{v} -> {img}" for v, img in g.entries()],
                "G": len(split.G),
                "B": len(split.B),
                "t_max": split.t_max,
                "passes": rep.passes,
                "k0": rep.k0,
            })
            if rep.passes and (best is None or rep.k0 < best[1].k0):
                best = (g, rep, split)
        if best is not None:
            return SearchResult(*best, log)
    return SearchResult(None, None, None, log)
