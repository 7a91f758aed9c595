"""Acceptance criteria 1-10.  Each test records one PASS/FAIL line that is
printed in the terminal summary, then asserts the same condition."""
from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

import oracles
from conftest import ACCEPTANCE, initial_of_p, presentation, preset_ideal
from linres.groebner import IdealGens, eliminate, ideal_power, reduced_groebner
from linres.hilbert import hs_bigraded, hs_quotient, numerator
from linres.homology import betti_table, regularity_mon
from linres.parsing import parse_problem
from linres.polycore import (
    ALL_ORDERS,
    DEGREVLEX_TX,
    MonomialOrder,
    Polynomial,
    RingSpec,
    bidegree,
    format_monomial,
)
from linres.presets import REFERENCE_CENSUS, builtin_map
from linres.rees import census, criterion, format_census, rees_presentation, split_linear, strand_of_free, xreg_bound
from linres.transform import BiTransform, transformed_split
from test_groebner import _random_ideal, strs

CONFIGS = [("degrevlex", "xt"), ("degrevlex", "tx"), ("lex", "xt"), ("lex", "tx")]


def record(crit: int, ok: bool, detail: str):
    ACCEPTANCE.append((crit, bool(ok), detail))
    assert ok, detail


def b_census(name, kind, prec):
    split = split_linear(initial_of_p(name, kind, prec))
    return format_census(census(bidegree(b, split.ring) for b in split.B))


def end_to_end(name, mapname):
    pres = presentation(name, "degrevlex", "tx")
    g = BiTransform.from_entries(builtin_map(mapname), pres.ring.xcount, pres.ring.tcount)
    split = transformed_split(pres, DEGREVLEX_TX, g)
    rep = criterion(split, pres.m, pres.d, name="J" if name == "terai-J" else "J1")
    B = sorted(format_monomial(b, split.ring) for b in split.B)
    return split, rep, B


# -- 1


@pytest.mark.parametrize("name,want", [
    ("terai-J", "(1,1):15,(3,0):10,(4,0):15"),
    ("conca-J1", "(1,1):15,(3,0):10,(4,0):12"),
])
def test_criterion_1_rees_census(name, want):
    start = time.perf_counter()
    pres = presentation(name, "degrevlex", "xt")
    got = format_census(pres.census)
    elapsed = time.perf_counter() - start
    record(1, got == want and elapsed <= 600,
           f"{name} P census {got} (minimal generators; reduced GB {format_census(pres.gb_census)}), {elapsed:.1f}s")


# -- 2


@pytest.mark.parametrize("name", ["terai-J", "conca-J1"])
def test_criterion_2_table_censuses(name):
    hits, cells = 0, []
    logged = True
    for kind, prec in CONFIGS:
        got = b_census(name, kind, prec)
        refs = REFERENCE_CENSUS[(name, kind, prec)]
        refs = refs if isinstance(refs, tuple) else (refs,)
        hits += got in refs
        cells.append(f"{kind}/{prec}={got}")
        if len(refs) > 1:
            # the discrepancy cell must match one of the two recorded values
            logged = got in refs
            cells[-1] += f" (refs {' | '.join(refs)})"
    record(2, hits >= 3 and logged, f"{name} {hits}/4 configurations match; " + "; ".join(cells))


# -- 3 and 4


def test_criterion_3_example_J():
    start = time.perf_counter()
    split, rep, B = end_to_end("terai-J", "g32")
    elapsed = time.perf_counter() - start
    ok = (len(split.G) == 98 and B == ["x3^2*t7", "x5^2*t4*t6"] and rep.passes and rep.k0 == 3
          and rep.conclusion == "reg(J^k) = 3k for all k >= 3" and elapsed <= 600)
    record(3, ok, f"|G|={len(split.G)} B={B} k0={rep.k0} [{rep.conclusion}] {elapsed:.1f}s")


def test_criterion_4_example_J1():
    start = time.perf_counter()
    split, rep, B = end_to_end("conca-J1", "g33")
    elapsed = time.perf_counter() - start
    ok = (len(split.G) == 144 and B == ["x2*x3*t10", "x5^2*t2*t4"] and rep.passes and rep.k0 == 3
          and rep.conclusion == "reg(J1^k) = 3k for all k >= 3" and elapsed <= 600)
    record(4, ok, f"|G|={len(split.G)} (want 144) B={B} (want t10x2x3, t2t4x5^2) "
                  f"k0={rep.k0} [{rep.conclusion}] {elapsed:.1f}s")


# -- 5


def test_criterion_5_regularity_oracle():
    J = preset_ideal("terai-J")
    regs, times = {}, {}
    for k in (1, 2, 3):
        start = time.perf_counter()
        regs[k] = regularity_mon(ideal_power(J, k))
        times[k] = time.perf_counter() - start
    ok = regs == {1: 3, 2: 7, 3: 9} and times[2] <= 300 and times[3] <= 1800
    record(5, ok, f"reg(J^k) = {regs}, times {', '.join(f'{t:.1f}s' for t in times.values())}")


# -- 6


def test_criterion_6_hilbert_equality():
    start = time.perf_counter()
    J, J1 = preset_ideal("terai-J"), preset_ideal("conca-J1")
    same = {k: hs_quotient(ideal_power(J, k)) == hs_quotient(ideal_power(J1, k)) for k in (1, 2, 3)}
    hbJ = hs_bigraded(initial_of_p("terai-J", "degrevlex", "tx"))
    hbJ1 = hs_bigraded(initial_of_p("conca-J1", "degrevlex", "tx"))
    elapsed = time.perf_counter() - start
    ok = all(same.values()) and hbJ == hbJ1 and elapsed <= 900
    record(6, ok, f"HS(S/J^k)=HS(S/J1^k) for k=1,2,3: {same}; bigraded equal: {hbJ == hbJ1}; {elapsed:.1f}s")


# -- 7


def test_criterion_7_strand_formula():
    start = time.perf_counter()
    bad = 0
    for m in range(1, 7):
        for k in range(7):
            for a in range(k + 1):
                got = strand_of_free([(a, 0, 1)], k, m)
                if got != [(0, oracles.strand_count(m, k - a))]:
                    bad += 1
    elapsed = time.perf_counter() - start
    record(7, bad == 0 and elapsed < 1, f"{bad} mismatches over m<=6, a<=k<=6, {elapsed:.3f}s")


# -- 8


def test_criterion_8_trivial_rees():
    start = time.perf_counter()
    I = parse_problem("ring x1..x2; ideal I = x1, x2;").ideal()
    pres = rees_presentation(I)
    P = [str(g) for g in pres.P]
    split = split_linear(IdealGens.from_monomials(pres.ring, [g.lm for g in pres.P]))
    rep = criterion(split, pres.m, pres.d)
    regs = [regularity_mon(ideal_power(I, k)) for k in range(1, 6)]
    elapsed = time.perf_counter() - start
    ok = P == ["x2*t1 - x1*t2"] and not split.B and rep.passes and rep.k0 == 1 and regs == [1, 2, 3, 4, 5]
    record(8, ok and elapsed < 1, f"P={P} B={list(split.B)} k0={rep.k0} regs={regs} {elapsed:.3f}s")


# -- 9


def _shuffle_case(seed):
    rng = random.Random(seed)
    ring, gens = _random_ideal(rng, homogeneous=seed % 2 == 0, maxdeg=3 if seed % 2 == 0 else 2)
    order = ALL_ORDERS[seed % 4]
    base = reduced_groebner(IdealGens(ring, tuple(gens), order))
    shuffled = gens[:]
    rng.shuffle(shuffled)
    shuffled = [g.scale(rng.choice([2, -1, Fraction(1, 3)])) for g in shuffled]
    return strs(base) == strs(reduced_groebner(IdealGens(ring, tuple(shuffled), order)))


def _elimination_case(seed):
    rng = random.Random(seed)
    _, gens = _random_ideal(rng, nvars=3, ngens=3, maxdeg=3, homogeneous=True)
    # eliminate x3 from a homogeneous ideal in three variables
    ring = RingSpec(2, 0, 1)
    gens = [Polynomial(ring, g.as_dict()) for g in gens]
    elim = eliminate(IdealGens(ring, tuple(gens)))
    for D in range(1, 5):
        want = oracles.eliminated_slice([g.as_dict() for g in gens], 3, 2, D)
        rows = oracles.vectors(oracles.degree_span([g.as_dict() for g in elim.gens], 2, D),
                               oracles.monomials(2, D))
        if oracles.rank(rows) != want:
            return False
    return True


def _euler_case(seed):
    rng = random.Random(1000 + seed)
    nvars = rng.randint(2, 5)
    gens = {tuple(rng.randint(0, 2) for _ in range(nvars)) for _ in range(rng.randint(1, 5))}
    gens.discard((0,) * nvars)
    gens = sorted(gens) or [(1,) + (0,) * (nvars - 1)]
    I = IdealGens.from_monomials(RingSpec(nvars), gens)
    euler: dict = {}
    for (i, j), v in betti_table(I).quotient().entries.items():
        euler[j] = euler.get(j, 0) + (-1) ** i * v
    k_poly = numerator(I.monomials(), [(1,)] * nvars)
    return {e[0]: c for e, c in k_poly.items()} == {j: c for j, c in euler.items() if c}


def _slice_case(order):
    I = parse_problem("ring x1..x3; ideal I = x1^2 + x2*x3, x1*x2, x2^2 - x1*x3, x3^2;").ideal()
    pres = rees_presentation(I.reorder(order), order)
    T = pres.ring
    ini = [g.lm for g in pres.P]
    f = [g.as_dict() for g in I.gens]
    key = order.keyer(T).key
    for k in range(0, 7):
        for j in range(0, 7 - k):
            want = oracles.leading_space(oracles.rees_slice(f, 3, k, j), key)
            monos = [x + t for x in oracles.monomials(3, j) for t in oracles.monomials(T.tcount, k)]
            got = {mo for mo in monos if oracles.in_monomial_ideal(mo, ini)}
            if want != got:
                return False
    return True


def test_criterion_9_property_suites():
    start = time.perf_counter()
    shuffle = sum(_shuffle_case(s) for s in range(100))
    elim = sum(_elimination_case(s) for s in range(40))
    euler = sum(_euler_case(s) for s in range(25))
    slices = sum(_slice_case(MonomialOrder("degrevlex", p)) for p in ("xt", "tx"))
    elapsed = time.perf_counter() - start
    ok = shuffle == 100 and elim == 40 and euler == 25 and slices == 2 and elapsed <= 600
    record(9, ok, f"shuffle {shuffle}/100, elimination {elim}/40, Euler {euler}/25, "
                  f"slices k+j<=6 {slices}/2, {elapsed:.1f}s")


# -- 10


def test_criterion_10_xreg_bound():
    start = time.perf_counter()
    in_p = initial_of_p("terai-J", "degrevlex", "xt")
    J = preset_ideal("terai-J")
    t = max(sum(mono[:6]) for mono in in_p.monomials())
    rows = []
    ok = t == 2
    for n in (1, 2, 3):
        bound = xreg_bound(in_p, n, 3)
        reg = regularity_mon(ideal_power(J, n))
        rows.append(f"n={n}: bound {bound} >= reg {reg}")
        ok &= bound >= reg
    elapsed = time.perf_counter() - start
    record(10, ok and elapsed < 60, f"t={t}; " + "; ".join(rows) + f"; {elapsed:.1f}s")
