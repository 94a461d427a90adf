import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gl3ext import golden
from gl3ext.acceptance import _random_region_vertex, run_check
from gl3ext.extgraph import (
    ETA_W,
    OMEGA1,
    OMEGA2,
    SIGMA0,
    TABLE_PP,
    GraphVertex,
    adjacent,
    decompose,
    defect,
    distance,
    in_region,
    lw_add,
    lw_can,
    lw_class,
    neighbors,
    parse_vertex,
    product_bfs_distance,
    r,
    region_points,
    sigma_sets,
    to_dot,
    trns,
    trns_inverse,
    vertex,
)
from gl3ext.tametypes import random_deep_weight
from gl3ext.weights import central_class, fw_eta, fw_sub, serre_nf
from gl3ext.weyl import ETA, vadd

P = 101
MU31 = (15, 8, 0)
C31 = (vadd(MU31, ETA),)


def v1(m, a):
    return vertex((m, a))


# adjacency ----------------------------------------------------------------

def test_adjacency_examples():
    assert adjacent(v1((0, 0), 1), v1((0, 0), 0))
    assert adjacent(v1(ETA_W, 0), v1(OMEGA1, 1))
    assert not adjacent(v1(OMEGA1, 0), v1(OMEGA2, 0))
    assert not adjacent(v1((0, 0), 0), v1((2, 0), 1))


def test_adjacency_needs_one_flip():
    a = vertex(((0, 0), 0), ((0, 0), 0))
    assert adjacent(a, vertex(((0, 0), 0), ((1, 0), 1)))
    assert not adjacent(a, vertex(((0, 0), 1), ((0, 0), 1)))
    assert not adjacent(a, vertex(((1, 0), 0), ((0, 0), 1)))


vertices2 = st.builds(
    lambda om, a: GraphVertex(om, a),
    st.tuples(*[st.tuples(st.integers(-4, 4), st.integers(-4, 4))] * 2),
    st.tuples(st.integers(0, 1), st.integers(0, 1)),
)


@given(vertices2, vertices2)
def test_adjacency_symmetric_and_bipartite(x, y):
    assert adjacent(x, y) == adjacent(y, x)
    if adjacent(x, y):
        assert (sum(x.a) - sum(y.a)) % 2 == 1


def test_interior_degree_is_seven_per_embedding(rng):
    # adjacency flips one embedding and moves it by one of 7 steps: 7 f neighbours
    for f in (1, 2, 3):
        center = random_deep_weight(rng, f, P, 10)
        v = GraphVertex(((0, 0),) * f, (0,) * f)
        nb = neighbors(v, center, P)
        assert len(nb) == 7 * f == len(set(nb))
        assert all(adjacent(v, u) for u in nb)


def test_table_extgraph_edges():
    edges = {frozenset((golden.pair(a), golden.pair(b))) for a, b in golden.load("table_extgraph")["edges"]}
    induced = {frozenset((x, y)) for x, y in itertools.combinations(SIGMA0, 2)
               if adjacent(vertex(x), vertex(y))}
    assert induced == edges and len(edges) == 15


# distance -----------------------------------------------------------------

def test_distance_examples():
    z0, z1 = v1((0, 0), 0), v1((0, 0), 1)
    assert distance(z0, z0) == 0
    assert distance(z0, z1) == 1
    assert distance(z0, v1(ETA_W, 0)) == 2
    assert distance(z0, v1(ETA_W, 0), center=C31, p=31) == 2


@given(vertices2, vertices2)
def test_free_distance_equals_bfs(x, y):
    assert distance(x, y, mode="free") == distance(x, y, mode="bfs")


@given(vertices2, vertices2, vertices2)
def test_distance_metric_and_parity(x, y, z):
    d = distance(x, y)
    assert d == distance(y, x) and (d == 0) == (x == y)
    assert distance(x, z) <= d + distance(y, z)
    assert d % 2 == (sum(x.a) - sum(y.a)) % 2


@pytest.mark.parametrize("f", [1, 2])
def test_restricted_and_free_modes_agree_when_deep(f, rng):
    for _ in range(30):
        center = random_deep_weight(rng, f, P, 3 * f + 3)
        x = _random_region_vertex(rng, center, P, 4)
        y = _random_region_vertex(rng, center, P, 4)
        d = distance(x, y, center=center, p=P)
        assert d == distance(x, y, mode="free")
        if f == 1:
            assert d == product_bfs_distance(x, y, center, P)


def test_adjacent_vertices_differ_by_one_from_any_vertex(rng):
    base = v1((0, 0), 0)
    for _ in range(200):
        x = v1((rng.randint(-5, 5), rng.randint(-5, 5)), rng.randint(0, 1))
        for y in neighbors(x):
            assert abs(distance(base, x) - distance(base, y)) == 1


def test_restricted_distance_outside_region():
    with pytest.raises(ValueError):
        distance(v1((0, 0), 0), v1((40, 0), 0), center=C31, p=31)


# Sigma_0 and defect -------------------------------------------------------

def test_sigma_sets():
    s = sigma_sets(2)
    assert len(s["sigma0"]) == 9 and len(s["obv"]) == 6 and len(s["inn"]) == 3
    assert s["obv"] | s["inn"] == s["sigma0"] and not s["obv"] & s["inn"]
    assert len(s["sigma"]) == 81
    assert r(v1(OMEGA1, 1)) == v1(OMEGA1, 0)


@given(vertices2)
def test_r_is_involution(x):
    assert r(r(x)) == x and all(a != b for a, b in zip(x.a, r(x).a))


def test_defect_examples():
    assert defect(v1(ETA_W, 0)) == 0
    assert defect(v1((0, 0), 0)) == 1
    assert defect(vertex(((0, 0), 1), (OMEGA1, 0), (OMEGA2, 1))) == 1
    with pytest.raises(ValueError):
        defect(v1((2, 0), 0))


# Trns ---------------------------------------------------------------------

def test_trns_examples():
    assert trns(C31, v1((0, 0), 0), 31) == serre_nf((MU31,), 31)
    assert trns(C31, v1((0, 0), 1), 31) == serre_nf(((29, 8, -14),), 31)
    # the (w1+w2, A) entry is mu shifted by the ordinary translation (1,0,-1)
    assert trns(C31, v1(ETA_W, 0), 31) == serre_nf(((16, 8, -1),), 31)
    assert trns_inverse(C31, serre_nf((MU31,), 31), 31) == v1((0, 0), 0)


def test_trns_outside_region():
    with pytest.raises(ValueError):
        trns(C31, v1((40, 0), 0), 31)


def test_trns_inverse_central_mismatch():
    with pytest.raises(ValueError):
        trns_inverse(C31, serre_nf(((15, 8, 1),), 31), 31)


def test_trns_injective_on_whole_region():
    p = 31
    center = C31
    seen = {}
    for m in region_points(center[0], p):
        for a in (0, 1):
            v = v1(m, a)
            sw = trns(center, v, p)
            assert sw not in seen, (v, seen.get(sw))
            seen[sw] = v
            assert trns_inverse(center, sw, p) == v


@pytest.mark.parametrize("f", [1, 2, 3])
def test_trns_round_trip_and_central_class(f):
    rng = random.Random(f)
    for _ in range(40):
        center = random_deep_weight(rng, f, P, 6)
        v = _random_region_vertex(rng, center, P, 4)
        sw = trns(center, v, P)
        assert trns_inverse(center, sw, P) == v
        assert central_class(sw.representative(), P) == central_class(fw_sub(center, fw_eta(f)), P)


def test_decomposition_is_bijective():
    # (omega, a) <-> (nu in Lambda_R, row of the table) for f = 1
    seen = set()
    for m1 in range(-4, 5):
        for m2 in range(-4, 5):
            for a in (0, 1):
                om0, w, nu = decompose(v1((m1, m2), a))
                assert lw_class(nu[0]) == 0
                lw_can(nu[0])
                assert lw_add(nu[0], om0[0]) == (m1, m2)
                key = (nu[0], om0[0], a)
                assert key not in seen
                seen.add(key)
    assert {TABLE_PP[k][0] for k in TABLE_PP} == {(0, 0), (1, 1), (0, 1), (1, -1), (1, 0), (-1, 1)}


def test_table_pp_and_weights_criteria():
    for n in (1, 2):
        res = run_check(n)
        assert res.ok, res.detail


# io -----------------------------------------------------------------------

def test_parse_vertex_and_json():
    v = parse_vertex("(1,0;1) (0,-1;0)")
    assert v == vertex(((1, 0), 1), ((0, -1), 0))
    assert GraphVertex.from_json(v.to_json()) == v
    assert parse_vertex(v.label()) == v


def test_dot_export():
    dot = to_dot([vertex(q) for q in SIGMA0], "sigma0")
    assert dot.startswith("graph sigma0 {")
    assert dot.count(" -- ") == 15
    assert 'label="(0,0;1)"' in dot


def test_in_region_matches_region_points():
    pts = set(region_points(C31[0], 31))
    for m1 in range(-40, 40):
        for m2 in range(-40, 40):
            assert in_region(C31, [(m1, m2)], 31) == ((m1, m2) in pts)
