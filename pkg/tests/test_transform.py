from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import presentation
from linres.groebner import IdealGens, minimal_generators, reduced_groebner
from linres.parsing import parse_map, parse_polynomial
from linres.polycore import DEGREVLEX_TX, RingSpec, format_polynomial
from linres.presets import builtin_map
from linres.rees import rees_presentation
from linres.transform import (
    BiTransform,
    SearchConfig,
    SingularTransformError,
    apply_bitransform,
    candidate_transforms,
    search_transform,
)

T = RingSpec(6, 10)


def test_identity_leaves_ideal():
    I = IdealGens(T, (parse_polynomial("x4*t1 - x1*t2", T),))
    out = apply_bitransform(I, BiTransform.identity(6, 10))
    assert out.gens == I.gens


def test_example_maps():
    g = BiTransform.from_entries(builtin_map("g32"), 6, 10)
    x4 = IdealGens(T, (parse_polynomial("x4", T),))
    assert format_polynomial(apply_bitransform(x4, g).gens[0]) == "x1 + x4"
    g33 = BiTransform.from_entries(builtin_map("g33"), 6, 10)
    t8 = IdealGens(T, (parse_polynomial("t8", T),))
    assert format_polynomial(apply_bitransform(t8, g33).gens[0]) == "t7 + t8"
    assert g33.entries() == [("x4", "x2 + x4"), ("x6", "x1 + x6"), ("t8", "t7 + t8")]
    assert parse_map(g33.to_map_text()) == g33.entries()


def test_singular_rejected():
    with pytest.raises(SingularTransformError):
        BiTransform(((1, 1), (1, 1)), ((1,),))
    with pytest.raises(SingularTransformError):
        BiTransform.from_entries([("x2", "x1")], 2, 1)


def test_bad_entries():
    with pytest.raises(ValueError):
        BiTransform.from_entries([("x1", "t1")], 2, 1)
    with pytest.raises(ValueError):
        BiTransform.from_entries([("x1", "x1^2")], 2, 1)
    with pytest.raises(ValueError):
        BiTransform.from_entries([("x3", "x1")], 2, 1)
    with pytest.raises(ValueError):
        BiTransform.from_entries([("x1", "x1"), ("x1", "x2")], 2, 1)


def test_bidegrees_preserved():
    g = BiTransform.from_entries(builtin_map("g33"), 6, 10)
    pres = presentation("conca-J1")
    for f, h in zip(pres.ideal().gens, apply_bitransform(pres.ideal(), g).gens):
        assert h.is_bihomogeneous() and h.bidegree() == f.bidegree()


@given(st.integers(0, 2 ** 32))
@settings(max_examples=30)
def test_unit_triangular_determinant_one(seed):
    for g in candidate_transforms(4, 5, SearchConfig(seed=seed, max_candidates=3, coefficient_pool=(1, 2, -1))):
        assert g.determinant() == 1
        assert (g.inverse().determinant()) == 1


@pytest.mark.parametrize("seed", range(5))
def test_inverse_round_trip(seed):
    rng = random.Random(seed)
    ring = RingSpec(3, 2)
    gens = tuple(
        parse_polynomial(t, ring, DEGREVLEX_TX)
        for t in rng.sample(["x1*t2 - x2*t1", "x3^2*t1 + x1*x2*t2", "t1*t2 - x1^2", "x2*t2^2 - x3*t1^2"], 2)
    )
    I = IdealGens(ring, gens, DEGREVLEX_TX)
    g = candidate_transforms(3, 2, SearchConfig(seed=seed, max_candidates=1))[0]
    back = apply_bitransform(apply_bitransform(I, g), g.inverse())
    assert [format_polynomial(p) for p in reduced_groebner(back)] == [format_polynomial(p) for p in reduced_groebner(I)]


def test_census_preserved_by_transform():
    base = parse_polynomial
    ring = RingSpec(3)
    I = IdealGens(ring, tuple(base(t, ring) for t in ("x1^2", "x1*x2", "x2*x3", "x3^2")), DEGREVLEX_TX)
    pres = rees_presentation(I, DEGREVLEX_TX)
    g = candidate_transforms(3, 4, SearchConfig(seed=3, max_candidates=1, max_offdiag_per_block=3))[0]
    moved = apply_bitransform(pres.ideal(), g)
    # the reduced basis may change shape; the minimal generator bidegrees cannot
    mins = minimal_generators(IdealGens(moved.ring, moved.gens, DEGREVLEX_TX))
    assert sorted(p.bidegree() for p in mins) == sorted(p.bidegree() for p in pres.mingens)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(max_candidates=-1)
    with pytest.raises(ValueError):
        SearchConfig(coefficient_pool=(0,))
    with pytest.raises(ValueError):
        SearchConfig(batch_size=0)


def test_candidates_deterministic():
    cfg = SearchConfig(seed=11, max_candidates=6)
    a = candidate_transforms(6, 10, cfg)
    b = candidate_transforms(6, 10, cfg)
    assert a == b
    for g in a:
        offx = sum(1 for i in range(6) for j in range(6) if i != j and g.xmap[i][j])
        offt = sum(1 for i in range(10) for j in range(10) if i != j and g.tmap[i][j])
        assert offx <= 2 and offt <= 2
        assert all(g.xmap[i][j] == 0 for i in range(6) for j in range(i))


def test_dense_candidates_upper_triangular():
    g = candidate_transforms(3, 3, SearchConfig(seed=1, max_candidates=1, dense=True))[0]
    assert all(g.xmap[i][j] == 1 for j in range(3) for i in range(j + 1))


def test_search_zero_budget():
    res = search_transform(presentation("terai-J", "degrevlex", "tx"), DEGREVLEX_TX, SearchConfig(max_candidates=0))
    assert res.transform is None and res.report is None and res.log == []


def test_search_finds_example_map():
    pres = presentation("terai-J", "degrevlex", "tx")
    g = BiTransform.from_entries(builtin_map("g32"), 6, 10)
    cfg = SearchConfig(seed=5, max_candidates=3, batch_size=3)
    res = search_transform(pres, DEGREVLEX_TX, cfg, candidates=[g], name="J")
    assert res.report.passes and res.report.k0 == 3
    again = search_transform(pres, DEGREVLEX_TX, cfg, candidates=[g], name="J")
    assert again.log == res.log and again.transform == res.transform


def test_search_batch_prefers_smaller_k0():
    # base (x1, x2): identity passes with k0 = 1; any candidate does too
    ring = RingSpec(2)
    I = IdealGens(ring, (parse_polynomial("x1", ring), parse_polynomial("x2", ring)), DEGREVLEX_TX)
    pres = rees_presentation(I, DEGREVLEX_TX)
    res = search_transform(pres, DEGREVLEX_TX, SearchConfig(seed=0, max_candidates=4))
    assert res.report.k0 == 1 and res.log[0]["index"] == 0
    assert [e["index"] for e in res.log] == [0, 1, 2, 3]

