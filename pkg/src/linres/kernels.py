"""Monomial-ideal inner loops with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``LINRES_DISABLE_NUMBA`` is
unset (or ``0``).  ``use_backend`` switches at runtime; both paths return
identical results.
"""
from __future__ import annotations

import math
import os
from math import comb

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

_disabled = os.environ.get("LINRES_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
BACKEND = "numba" if NUMBA_AVAILABLE and not _disabled else "numpy"

# int64 Bareiss is exact while products of two minors stay below this.
_INT64_SAFE = 2 ** 62


def use_backend(name: str) -> None:
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba is not installed")
    BACKEND = name


# ------------------------------------------------------------------ compositions


def compositions(total: int, parts: int) -> np.ndarray:
    """Vectors of ``parts`` non-negative ints summing to ``total``, colex order."""
    if parts == 0:
        return np.zeros((1 if total == 0 else 0, 0), dtype=np.int64)
    if total < 0:
        return np.zeros((0, parts), dtype=np.int64)
    out = np.zeros((comb(total + parts - 1, parts - 1), parts), dtype=np.int64)
    _fill_compositions(out, total, parts)
    return out


def _fill_compositions(out, total, parts):
    # colex: the last coordinate varies slowest
    row = 0
    e = np.zeros(parts, dtype=np.int64)

    def rec(pos, remaining):
        nonlocal row
        if pos == 0:
            e[0] = remaining
            out[row] = e
            row += 1
            return
        for v in range(remaining + 1):
            e[pos] = v
            rec(pos - 1, remaining - v)
        e[pos] = 0

    rec(parts - 1, total)


# ------------------------------------------------------------------ divisibility


def _rows_in_ideal_numpy(gens: np.ndarray, monos: np.ndarray) -> np.ndarray:
    out = np.zeros(len(monos), dtype=np.bool_)
    if len(gens) == 0 or len(monos) == 0:
        return out
    chunk = max(1, 2_000_000 // max(1, gens.size))
    for s in range(0, len(monos), chunk):
        block = monos[s:s + chunk]
        out[s:s + chunk] = (gens[None, :, :] <= block[:, None, :]).all(axis=2).any(axis=1)
    return out


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _rows_in_ideal_numba(gens, monos):
        n, k = monos.shape
        g = gens.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            for a in range(g):
                ok = True
                for v in range(k):
                    if gens[a, v] > monos[i, v]:
                        ok = False
                        break
                if ok:
                    out[i] = True
                    break
        return out

    @njit(cache=True)
    def _koszul_faces_numba(gens, b):
        n = b.shape[0]
        g = gens.shape[0]
        faces = np.zeros(1 << n, dtype=np.bool_)
        c = np.empty(n, dtype=np.int64)
        for mask in range(1 << n):
            ok = True
            for v in range(n):
                bit = (mask >> v) & 1
                c[v] = b[v] - bit
                if c[v] < 0:
                    ok = False
                    break
            if not ok:
                continue
            for a in range(g):
                div = True
                for v in range(n):
                    if gens[a, v] > c[v]:
                        div = False
                        break
                if div:
                    faces[mask] = True
                    break
        return faces

    @njit(cache=True)
    def _rank_bareiss_numba(a):
        n, m = a.shape
        row = 0
        prev = 1
        for col in range(m):
            if row == n:
                break
            piv = -1
            for i in range(row, n):
                if a[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != row:
                for j in range(m):
                    tmp = a[row, j]
                    a[row, j] = a[piv, j]
                    a[piv, j] = tmp
            p = a[row, col]
            for i in range(row + 1, n):
                f = a[i, col]
                for j in range(col + 1, m):
                    a[i, j] = (p * a[i, j] - f * a[row, j]) // prev
                a[i, col] = 0
            prev = p
            row += 1
        return row


def rows_in_ideal(gens: np.ndarray, monos: np.ndarray) -> np.ndarray:
    """Boolean mask: row i of ``monos`` is divisible by some row of ``gens``."""
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    monos = np.ascontiguousarray(monos, dtype=np.int64)
    if gens.ndim != 2 or monos.ndim != 2:
        raise ValueError("expected 2-d exponent matrices")
    if len(gens) == 0 or len(monos) == 0:
        return np.zeros(len(monos), dtype=np.bool_)
    if gens.shape[1] != monos.shape[1]:
        raise ValueError("exponent vectors have different lengths")
    if BACKEND == "numba":
        return _rows_in_ideal_numba(gens, monos)
    return _rows_in_ideal_numpy(gens, monos)


def koszul_faces(gens: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Indicator over subset bitmasks tau: b - tau >= 0 and x^(b - tau) in (gens)."""
    gens = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, len(b))
    b = np.ascontiguousarray(b, dtype=np.int64)
    n = len(b)
    if BACKEND == "numba":
        return _koszul_faces_numba(gens, b)
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    cand = b[None, :] - bits
    valid = (cand >= 0).all(axis=1)
    out = np.zeros(1 << n, dtype=np.bool_)
    if valid.any() and len(gens):
        out[valid] = _rows_in_ideal_numpy(gens, cand[valid])
    return out


# ------------------------------------------------------------------ exact rank


def _rank_bareiss_python(rows: list[list[int]]) -> int:
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    m = len(a[0]) if n else 0
    row, prev = 0, 1
    for col in range(m):
        if row == n:
            break
        piv = next((i for i in range(row, n) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        for i in range(row + 1, n):
            f = a[i][col]
            ai, ar = a[i], a[row]
            for j in range(col + 1, m):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[col] = 0
        prev = p
        row += 1
    return row


def _hadamard_ok(mat: np.ndarray) -> bool:
    norms = np.sort(np.sqrt((mat.astype(np.float64) ** 2).sum(axis=1)))[::-1]
    k = min(mat.shape)
    logb = float(np.log2(np.maximum(norms[:k], 1.0)).sum()) if k else 0.0
    return 2 * logb + 2 < math.log2(_INT64_SAFE)


def rank_exact(mat) -> int:
    """Rank over Q of an integer matrix (fraction-free elimination)."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    if BACKEND == "numba" and mat.dtype != object and _hadamard_ok(mat):
        return int(_rank_bareiss_numba(np.array(mat, dtype=np.int64)))
    return _rank_bareiss_python(mat.tolist())


# ------------------------------------------------------------------ lcm lattice


def lcm_lattice(gens: np.ndarray) -> np.ndarray:
    """All joins (componentwise maxima) of nonempty subsets of ``gens``, sorted."""
    gens = np.asarray(gens, dtype=np.int64)
    if len(gens) == 0:
        return gens.reshape(0, gens.shape[1] if gens.ndim == 2 else 0)
    base = int(gens.max()) + 1
    weights = base ** np.arange(gens.shape[1], dtype=np.int64)[::-1]
    seen = set((gens @ weights).tolist())
    frontier = np.unique(gens, axis=0)
    allrows = [frontier]
    while len(frontier):
        joins = np.maximum(frontier[:, None, :], gens[None, :, :]).reshape(-1, gens.shape[1])
        joins = np.unique(joins, axis=0)
        codes = (joins @ weights).tolist()
        fresh = np.array([c not in seen for c in codes], dtype=np.bool_)
        frontier = joins[fresh]
        seen.update(c for c, f in zip(codes, fresh) if f)
        if len(frontier):
            allrows.append(frontier)
    out = np.unique(np.concatenate(allrows, axis=0), axis=0)
    return out


def count_outside(gens: np.ndarray, nvars: int, degree: int) -> int:
    """Number of degree-``degree`` monomials in ``nvars`` variables not in (gens)."""
    monos = compositions(degree, nvars)
    if len(gens) == 0:
        return len(monos)
    return int((~rows_in_ideal(np.asarray(gens).reshape(-1, nvars), monos)).sum())
