import itertools
import random

import pytest

from gl3ext import golden
from gl3ext.acceptance import _bfs_ball
from gl3ext.extgraph import SIGMA0, GraphVertex, adjacent, distance, vertex
from gl3ext.lattices import (
    PredictedGraph,
    count_submodules,
    is_closed,
    label_defect,
    lambda_below_eta0,
    lambda_eta,
    mu_op,
    op_weight,
    predicted_graph,
    predicted_layers,
    saturation_predictions,
    submodules,
    weyl1_node_of_label,
    weyl1_node_weights,
    weyl_jh,
)
from gl3ext.tametypes import TameType, jh, random_deep_weight
from gl3ext.weights import serre_nf
from gl3ext.weyl import ALL_PERMS, ETA, vadd

P = 101
TAU1 = TameType(((0, 1, 2),), ((60, 30, 5),))


def random_type(rng, f, need=13):
    return TameType(tuple(rng.choice(ALL_PERMS) for _ in range(f)), random_deep_weight(rng, f, P, need))


def closed_bruteforce(g):
    verts = g.vertices
    count = 0
    for mask in range(1 << len(verts)):
        sub = {v for i, v in enumerate(verts) if mask >> i & 1}
        if all(b in sub for (a, b) in g.edges if a in sub):
            count += 1
    return count


# layers -------------------------------------------------------------------

@pytest.mark.parametrize("f", [1, 2])
def test_layers_partition(f, rng):
    tau = random_type(rng, f)
    table = jh(tau, P)
    for sigma in list(table.values())[:5]:
        layers = predicted_layers(tau, sigma, P)
        assert layers[0] == {sigma}
        assert sum(len(l) for l in layers) == 9 ** f
        assert set().union(*layers) == set(table.values())


def test_layer_one_example():
    table = jh(TAU1, P)
    sigma = table[vertex(((1, 1), 0))]
    layers = predicted_layers(TAU1, sigma, P)
    assert layers[1] == {table[vertex(((1, 0), 1))], table[vertex(((0, 1), 1))]}


@pytest.mark.parametrize("f", [1, 2])
def test_defect_zero_has_unique_opposite(f, rng):
    for _ in range(5 if f == 1 else 1):
        tau = random_type(rng, f)
        items = list(jh(tau, P).items())
        for lab, sw in (items if f == 1 else rng.sample(items, 12)):
            layers = predicted_layers(tau, sw, P)
            assert len(layers) - 1 == 3 * f - label_defect(lab)
            if label_defect(lab) == 0:
                assert len(layers[3 * f]) == 1
                assert op_weight(tau, sw, P) == sorted(layers[3 * f])


# predicted graph ----------------------------------------------------------

def test_graph_rules(rng):
    for f in (1, 2):
        tau = random_type(rng, f)
        table = jh(tau, P)
        lab_of = {sw: lab for lab, sw in table.items()}
        for sigma in rng.sample(list(table.values()), 3):
            g = predicted_graph(tau, sigma, P)
            assert g.is_acyclic()
            top = max(g.layer.values())
            for a, b in g.edges:
                assert g.layer[b] == g.layer[a] + 1
                assert distance(lab_of[a], lab_of[b]) == 1
            assert not any(g.layer[a] == top for a, _ in g.edges)
            for v in g.vertices:
                if v != sigma:
                    assert any(g.layer[a] < g.layer[v] for a in g.predecessors(v))


def test_graph_from_01_matches_table_extgraph():
    table = jh(TAU1, P)
    sigma = table[vertex(((0, 0), 1))]
    g = predicted_graph(TAU1, sigma, P)
    lab = {sw: l.pairs()[0] for l, sw in table.items()}
    got = {frozenset((lab[a], lab[b])) for a, b in g.edges}
    want = {frozenset((golden.pair(a), golden.pair(b))) for a, b in golden.load("table_extgraph")["edges"]}
    assert got == want
    ref = vertex(((0, 0), 1))
    for a, b in g.edges:
        assert distance(ref, vertex(lab[a])) < distance(ref, vertex(lab[b]))


def test_duality_for_defect_zero(rng):
    for f in (1, 2):
        tau = random_type(rng, f)
        for lab, sw in jh(tau, P).items():
            if label_defect(lab):
                continue
            (op,) = op_weight(tau, sw, P)
            assert predicted_graph(tau, sw, P).transpose().edges == predicted_graph(tau, op, P).edges
            break


def test_dot_and_json():
    table = jh(TAU1, P)
    g = predicted_graph(TAU1, table[vertex(((0, 0), 1))], P)
    dot = g.to_dot()
    assert dot.startswith("digraph predicted {") and dot.count(" -> ") == len(g.edges)
    data = g.to_json()
    assert data["kind"] == "predicted" and len(data["vertices"]) == 9
    assert {"layer", "defect"} <= set(data["vertices"][0])


# submodules ---------------------------------------------------------------

def test_submodules_two_vertex():
    a, b = serre_nf(((5, 3, 0),), P), serre_nf(((6, 3, 0),), P)
    g = PredictedGraph([a, b], {}, {(a, b)}, {a: 0, b: 1}, a)
    subs = set(submodules(g))
    assert subs == {frozenset(), frozenset({b}), frozenset({a, b})}
    assert all(is_closed(s, g) for s in subs)


def test_submodules_against_bruteforce(rng):
    for _ in range(3):
        tau = random_type(rng, 1)
        for sigma in jh(tau, P).values():
            g = predicted_graph(tau, sigma, P)
            subs = submodules(g)
            assert len(subs) == len(set(subs)) == closed_bruteforce(g)
            assert frozenset() in subs and frozenset(g.vertices) in subs


def test_submodule_bound():
    tau = random_type(random.Random(3), 2)
    g = predicted_graph(tau, next(iter(jh(tau, P).values())), P)
    with pytest.raises(ValueError):
        count_submodules(g, bound=10)


# saturation ---------------------------------------------------------------

def test_saturation_metric_and_row_max(rng):
    for f in (1, 2):
        tau = random_type(rng, f)
        table = jh(tau, P)
        sat = saturation_predictions(tau, P)
        verts = list(table.values())
        for lab, a in table.items():
            assert sat[(a, a)] == 0
            assert max(sat[(a, b)] for b in verts) == 3 * f - label_defect(lab)
        for a, b in itertools.combinations(verts, 2):
            assert sat[(a, b)] == sat[(b, a)] > 0
        for a, b, c in itertools.islice(itertools.permutations(verts, 3), 4000):
            assert sat[(a, c)] <= sat[(a, b)] + sat[(b, c)]


def test_adjacent_pair_has_saturation_one():
    table = jh(TAU1, P)
    sat = saturation_predictions(TAU1, P)
    for l1, l2 in itertools.combinations(table, 2):
        if adjacent(l1, l2):
            assert sat[(table[l1], table[l2])] == 1


# Weyl modules -------------------------------------------------------------

def test_lambda_eta_sets():
    assert len(lambda_eta()) == 13
    per = lambda_below_eta0()
    assert len(per) == 20
    forced = [m for m, b in per if b == 0 and (m, 1) not in per]
    assert len(forced) == 6


@pytest.mark.parametrize("mu", [((29, 8, -14),), ((33, 12, -9),), ((40, 25, 0), (35, 20, -2))])
def test_weyl_grades_against_bfs(mu):
    p = 31
    f = len(mu)
    res = weyl_jh(mu, p)
    assert len(res) == 20 ** f and len({sw for _, sw, _ in res}) == 20 ** f
    center = tuple(vadd(m, ETA) for m in mu_op(mu, p))
    dist = _bfs_ball(GraphVertex(((0, 0),) * f, (1,) * f), center, p, 3 * f)
    for v, _, grade in res:
        assert grade == dist[v]
    origin = [g for v, _, g in res if v == GraphVertex(((0, 0),) * f, (1,) * f)]
    assert origin == [0]


def test_weyl_table_nodes():
    p, mu = 31, ((29, 8, -14),)
    x, y, z = mu[0]
    table = golden.load("table_weyl1")
    nodes = weyl1_node_weights(mu, p)
    env = {"x": x, "y": y, "z": z, "p": p}
    for name, spec in table["nodes"].items():
        hw = tuple(golden.eval_linear(e, env) for e in spec["weight"])
        assert serre_nf((hw,), p) in nodes[name] or spec["factor"] != "0"
    by_node = {}
    for v, sw, grade in weyl_jh(mu, p):
        node = weyl1_node_of_label(v.pairs()[0])
        by_node.setdefault(node, set()).add(sw)
        assert grade == table["nodes"][node]["grade"]
    assert by_node == nodes
    # the top node carries L(z+p-2, y, x-p+2)
    assert serre_nf(((z + p - 2, y, x - p + 2),), p) in nodes["G"] | nodes["A"]


def test_weyl_table_edges_are_adjacent_grades():
    table = golden.load("table_weyl1")
    for a, b in table["edges"]:
        assert abs(table["nodes"][a]["grade"] - table["nodes"][b]["grade"]) == 1


def test_weyl_requires_upper_alcove():
    with pytest.raises(ValueError):
        weyl_jh(((15, 8, 0),), 31)
