"""Graded Betti numbers of monomial ideals over Q.

beta_{i,b}(I) is the reduced homology dim H~_{i-1}(K^b(I); Q) of the upper
Koszul complex K^b(I) = {squarefree tau : x^(b - tau) in I}; only joins of
generators (the lcm lattice) can carry nonzero Betti numbers.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .groebner import IdealGens, minimalize_monomials


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces stored as vertex bitmasks; ``faces == frozenset()`` is the void complex."""

    vertex_count: int
    faces: frozenset

    @classmethod
    def from_indicator(cls, n: int, indicator: np.ndarray) -> "SimplicialComplex":
        return cls(n, frozenset(int(i) for i in np.flatnonzero(indicator)))

    @classmethod
    def from_sets(cls, n: int, sets) -> "SimplicialComplex":
        return cls(n, frozenset(sum(1 << v for v in s) for s in sets))

    def is_void(self) -> bool:
        return not self.faces

    def is_irrelevant(self) -> bool:
        return self.faces == frozenset({0})

    def face_sets(self) -> list[frozenset]:
        out = []
        for f in sorted(self.faces, key=lambda f: (bin(f).count("1"), f)):
            out.append(frozenset(v for v in range(self.vertex_count) if f >> v & 1))
        return out

    def is_closed(self) -> bool:
        for f in self.faces:
            v = f
            while v:
                low = v & -v
                if f & ~low not in self.faces:
                    return False
                v &= v - 1
        return True

    def reduced_homology(self) -> dict[int, int]:
        """Nonzero ranks of reduced homology over Q, keyed by dimension."""
        if not self.faces:
            return {}
        by_dim = defaultdict(list)
        for f in self.faces:
            by_dim[bin(f).count("1") - 1].append(f)
        for faces in by_dim.values():
            faces.sort()
        top = max(by_dim)
        index = {d: {f: i for i, f in enumerate(fs)} for d, fs in by_dim.items()}
        ranks = {}
        for d in range(0, top + 1):
            ranks[d] = _boundary_rank(by_dim.get(d, []), index.get(d - 1, {}))
        out = {}
        for d in range(-1, top + 1):
            n = len(by_dim.get(d, []))
            h = n - ranks.get(d, 0) - ranks.get(d + 1, 0)
            if h:
                out[d] = h
        return out


def _boundary_rank(faces: list[int], lower: dict[int, int]) -> int:
    if not faces or not lower:
        return 0
    mat = np.zeros((len(faces), len(lower)), dtype=np.int64)
    for row, f in enumerate(faces):
        sign = 1
        v = f
        while v:
            low = v & -v
            mat[row, lower[f & ~low]] = sign
            sign = -sign
            v &= v - 1
    return kernels.rank_exact(mat)


def koszul_subcomplex(ideal: IdealGens | np.ndarray, b) -> SimplicialComplex:
    """Upper Koszul complex K^b(I) on the variables of I's ring."""
    gens = _gen_matrix(ideal)
    b = np.asarray(b, dtype=np.int64)
    return SimplicialComplex.from_indicator(len(b), kernels.koszul_faces(gens, b))


def _gen_matrix(ideal) -> np.ndarray:
    if isinstance(ideal, IdealGens):
        monos = minimalize_monomials(ideal.monomials())
        return np.array(monos, dtype=np.int64).reshape(len(monos), ideal.ring.nvars)
    return np.asarray(ideal, dtype=np.int64)


@dataclass(frozen=True)
class BettiTable:
    entries: dict = field(default_factory=dict)

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    @property
    def regularity(self) -> int:
        if not self.entries:
            raise ValueError("empty Betti table")
        return max(j - i for i, j in self.entries)

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def quotient(self) -> "BettiTable":
        """Betti numbers of S/I from those of I."""
        out = {(0, 0): 1}
        out.update({(i + 1, j): v for (i, j), v in self.entries.items()})
        return BettiTable(out)

    def format(self) -> str:
        """Macaulay2-style table: rows j - i, columns i."""
        if not self.entries:
            return "(zero)"
        imax = max(i for i, _ in self.entries)
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(v)) for v in self.entries.values()) + 1
        lines = [" " * 5 + "".join(f"{i:>{width}}" for i in range(imax + 1))]
        for r in range(rows[0], rows[-1] + 1):
            cells = "".join(f"{(self.entries.get((i, i + r), 0) or '.'):>{width}}" for i in range(imax + 1))
            lines.append(f"{r:>4}:{cells}")
        return "\n".join(lines)


def multigraded_betti(ideal: IdealGens | np.ndarray) -> dict[tuple[int, tuple], int]:
    """Nonzero beta_{i,b}(I), keyed by (i, multidegree b)."""
    gens = _gen_matrix(ideal)
    out = {}
    for b in kernels.lcm_lattice(gens):
        cx = SimplicialComplex.from_indicator(len(b), kernels.koszul_faces(gens, b))
        for dim, rank in cx.reduced_homology().items():
            out[(dim + 1, tuple(int(v) for v in b))] = rank
    return out


def betti_table(ideal: IdealGens | np.ndarray) -> BettiTable:
    """Graded Betti numbers beta_{i,j}(I) of a monomial ideal."""
    table: dict = defaultdict(int)
    for (i, b), rank in multigraded_betti(ideal).items():
        table[(i, sum(b))] += rank
    return BettiTable(dict(sorted(table.items())))


def regularity_mon(ideal: IdealGens | np.ndarray) -> int:
    """max{j - i : beta_{i,j}(I) != 0} for a nonzero monomial ideal."""
    gens = _gen_matrix(ideal)
    if len(gens) == 0:
        raise ValueError("regularity of the zero ideal is undefined")
    return betti_table(gens).regularity
