"""Hilbert series of quotients by monomial ideals (pivot recursion).

Numerators are integer polynomials stored as ``{exponent vector: coeff}``
over the denominator prod_v (1 - z^deg(v)).  A graded series uses one
formal variable ``s``; the bigraded one uses ``u`` for t-degree and ``s``
for x-degree.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

from .groebner import IdealGens, initial_ideal, minimalize_monomials
from .polycore import MonomialOrder


def _padd(a: dict, b: dict, shift: tuple | None = None) -> dict:
    out = dict(a)
    for e, c in b.items():
        if shift is not None:
            e = tuple(x + y for x, y in zip(e, shift))
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul_binom(a: dict, deg: tuple) -> dict:
    """a * (1 - z^deg)."""
    return _padd(a, {e: -c for e, c in a.items()}, deg)


def _coprime_all(gens) -> bool:
    used = 0
    for g in gens:
        mask = 0
        for i, e in enumerate(g):
            if e:
                mask |= 1 << i
        if used & mask:
            return False
        used |= mask
    return True


def _gdeg(mono, weights) -> tuple:
    k = len(weights[0])
    return tuple(sum(e * w[j] for e, w in zip(mono, weights)) for j in range(k))


def numerator(gens, weights) -> dict:
    """K-polynomial of K[vars]/(gens) for a monomial ideal, grading ``weights``.

    Pivots on the variable occurring in the most generators (lowest index
    on ties): N(I) = N(I + x_v) + z^deg(x_v) N(I : x_v).
    """
    memo: dict = {}
    zero = (0,) * len(weights[0])

    def rec(gs: tuple) -> dict:
        if any(not any(g) for g in gs):
            return {}
        if gs in memo:
            return memo[gs]
        if _coprime_all(gs):
            out = {zero: 1}
            for g in gs:
                out = _pmul_binom(out, _gdeg(g, weights))
            memo[gs] = out
            return out
        counts = Counter(i for g in gs for i, e in enumerate(g) if e)
        v = min(counts, key=lambda i: (-counts[i], i))
        unit = tuple(int(i == v) for i in range(len(gs[0])))
        plus = _canon([g for g in gs if not g[v]] + [unit])
        colon = _canon([tuple(e - 1 if i == v and e else e for i, e in enumerate(g)) for g in gs])
        out = _padd(rec(plus), rec(colon), _gdeg(unit, weights))
        memo[gs] = out
        return out

    return rec(_canon(gens)) if gens else {zero: 1}


def _canon(gens) -> tuple:
    return tuple(sorted(minimalize_monomials(gens)))


def _divide_one_minus(num: dict, axis: int) -> dict | None:
    """num / (1 - z_axis) if exact, else None."""
    if not num:
        return None
    # divisible iff num vanishes at z_axis = 1
    collapsed: dict = {}
    for e, c in num.items():
        rest = e[:axis] + e[axis + 1:]
        collapsed[rest] = collapsed.get(rest, 0) + c
    if any(collapsed.values()):
        return None
    out: dict = {}
    # quotient q with q*(1 - z) = num: q_k = sum_{i<=k} num_i along the axis
    by_rest: dict = {}
    for e, c in num.items():
        rest = e[:axis] + e[axis + 1:]
        by_rest.setdefault(rest, {})[e[axis]] = c
    for rest, col in by_rest.items():
        acc = 0
        for k in range(0, max(col) + 1):
            acc += col.get(k, 0)
            if acc:
                out[rest[:axis] + (k,) + rest[axis:]] = acc
    return out


@dataclass(frozen=True)
class HilbertSeriesGraded:
    """sum_k c_k s^k / (1 - s)^denom_power with the numerator as (c_0, c_1, ...)."""

    numerator: tuple
    denom_power: int

    @classmethod
    def from_numerator(cls, num: dict, nvars: int) -> "HilbertSeriesGraded":
        power = nvars
        while power > 0:
            q = _divide_one_minus(num, 0)
            if q is None:
                break
            num, power = q, power - 1
        top = max((e[0] for e in num), default=-1)
        return cls(tuple(num.get((k,), 0) for k in range(top + 1)), power)

    def coefficient(self, n: int) -> int:
        """Hilbert function value at degree n."""
        p = self.denom_power
        total = 0
        for k, c in enumerate(self.numerator):
            if c and n - k >= 0:
                total += c * (comb(n - k + p - 1, p - 1) if p else int(n == k))
        return total

    def expansion(self, upto: int) -> list[int]:
        return [self.coefficient(n) for n in range(upto + 1)]

    def __str__(self):
        return f"({_fmt_univariate(self.numerator, 's')})/(1-s)^{self.denom_power}"

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator": f"(1-s)^{self.denom_power}"}


@dataclass(frozen=True)
class HilbertSeriesBigraded:
    """sum c_{a,b} u^a s^b / ((1-u)^pu (1-s)^ps); u tracks t-degree, s x-degree."""

    numerator: tuple  # sorted ((a, b), c) pairs
    u_power: int
    s_power: int

    @classmethod
    def from_numerator(cls, num: dict, m: int, r: int) -> "HilbertSeriesBigraded":
        pu, ps = m, r
        for axis in (0, 1):
            while (pu if axis == 0 else ps) > 0:
                q = _divide_one_minus(num, axis)
                if q is None:
                    break
                num = q
                if axis == 0:
                    pu -= 1
                else:
                    ps -= 1
        return cls(tuple(sorted(num.items())), pu, ps)

    def coefficient(self, k: int, j: int) -> int:
        """Number of standard monomials of bidegree (k, j)."""
        total = 0
        for (a, b), c in self.numerator:
            if k - a >= 0 and j - b >= 0:
                total += c * _series_coeff(k - a, self.u_power) * _series_coeff(j - b, self.s_power)
        return total

    def __str__(self):
        terms = []
        for (a, b), c in self.numerator:
            mono = "*".join(p for p in (_pow("u", a), _pow("s", b)) if p)
            terms.append(_signed(c, mono, first=not terms))
        return f"({''.join(terms) or '0'})/((1-u)^{self.u_power}*(1-s)^{self.s_power})"

    def to_json(self) -> dict:
        return {
            "numerator": [[a, b, c] for (a, b), c in self.numerator],
            "denominator": f"(1-u)^{self.u_power}*(1-s)^{self.s_power}",
        }


def _series_coeff(n: int, p: int) -> int:
    if p == 0:
        return int(n == 0)
    return comb(n + p - 1, p - 1)


def _pow(v: str, e: int) -> str:
    return "" if e == 0 else (v if e == 1 else f"{v}^{e}")


def _signed(c: int, mono: str, first: bool) -> str:
    a = abs(c)
    body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
    if first:
        return body if c > 0 else f"-{body}"
    return f" {'+' if c > 0 else '-'} {body}"


def _fmt_univariate(coeffs, var: str) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c:
            terms.append(_signed(c, _pow(var, k), first=not terms))
    return "".join(terms) or "0"


def hs_quotient(ideal: IdealGens, order: MonomialOrder | None = None) -> HilbertSeriesGraded:
    """Graded Hilbert series of K[vars]/I, read off in(I)."""
    if not all(g.is_homogeneous() for g in ideal.gens):
        raise ValueError("Hilbert series needs a homogeneous ideal")
    ring = ideal.ring
    monos = initial_ideal(ideal, order or ideal.order).monomials()
    weights = [(1,)] * ring.nvars
    return HilbertSeriesGraded.from_numerator(numerator(monos, weights), ring.nvars)


def hs_bigraded(ideal: IdealGens) -> HilbertSeriesBigraded:
    """Bigraded series of T/I for a monomial ideal I in K[x, t]."""
    ring = ideal.ring
    if ring.auxcount:
        raise ValueError("bigraded series undefined with aux variables")
    monos = ideal.monomials()
    weights = [(0, 1)] * ring.xcount + [(1, 0)] * ring.tcount
    return HilbertSeriesBigraded.from_numerator(numerator(monos, weights), ring.tcount, ring.xcount)
