import itertools
import random
import warnings

import pytest

from gl3ext import golden
from gl3ext.extgraph import (
    SIGMA0,
    SIGMA0_INN,
    SIGMA0_OBV,
    GraphVertex,
    act_on_vertex,
    adjacent,
    r,
    r_pair,
    trns,
    vertex,
)
from gl3ext.tametypes import (
    DepthError,
    GenericityWarning,
    RhoData,
    TameType,
    TypeData,
    adm_plus_eta,
    eliminate,
    intersect_types,
    intersection_weights,
    jh,
    obvious_weights,
    orientation,
    random_deep_weight,
    random_type_data,
    rho_from_exponents,
    rotate_pairs,
    rotation,
    s_star,
    shape_lengths,
    shape_weights,
    sigma_w_combinatorial,
    w_question,
)
from gl3ext.weights import central_class, serre_nf
from gl3ext.weyl import (
    ALL_PERMS,
    ETA,
    AffElem,
    AffElem1,
    admissible_set,
    bruhat_leq,
    length,
    word_to_elem,
)

P = 101
MU = ((45, 20, 3),)


@pytest.fixture(scope="module")
def sigma_table():
    """Sigma_x for every x in Adm+(eta), computed by intersecting normal forms."""
    return {x: intersect_types(((0, 1, 2),), MU, AffElem((x,)), P)[0] for x in adm_plus_eta()}


# JH sets and predicted weights --------------------------------------------

@pytest.mark.parametrize("f", [1, 2])
def test_cardinalities(f):
    rng = random.Random(f)
    for _ in range(10):
        lam = random_deep_weight(rng, f, P, 4)
        s = tuple(rng.choice(ALL_PERMS) for _ in range(f))
        table = jh(TameType(s, lam), P)
        rho = RhoData(s, lam)
        wq, obv = w_question(rho, P), obvious_weights(rho, P)
        assert len(set(table.values())) == 9 ** f
        assert len(set(wq.values())) == 9 ** f
        assert len(set(obv.values())) == 6 ** f
        assert set(obv.values()) <= set(wq.values())


def test_jh_contains_base_vertices():
    lam = ((50, 30, 4),)
    table = jh(TameType(((0, 1, 2),), lam), P)
    for a in (0, 1):
        assert trns(lam, vertex(((0, 0), a)), P) in table.values()


def test_w_question_labels_identity():
    wq = w_question(RhoData(((0, 1, 2),), ((50, 30, 4),)), P)
    assert {lab.pairs()[0] for lab in wq} == {r_pair(q) for q in SIGMA0}


def test_obvious_weights_are_labelled_by_obvious_pairs():
    rho = RhoData(((0, 1, 2),), ((50, 30, 4),))
    wq = w_question(rho, P)
    obv = set(obvious_weights(rho, P).values())
    obv_labels = {lab for lab, sw in wq.items() if sw in obv}
    assert obv_labels == {r(vertex(q)) for q in SIGMA0_OBV}


def test_equivariance(rng):
    for _ in range(40):
        f = rng.choice((1, 2))
        mu = random_deep_weight(rng, f, P, 12)
        x = AffElem(tuple(AffElem1(rng.choice(ALL_PERMS), (n, -n, 0)) for n in
                          (rng.randint(-1, 1) for _ in range(f))))
        tau = TameType.from_affine(x, mu)
        moved = {act_on_vertex(x, GraphVertex.from_pairs(c)) for c in itertools.product(SIGMA0, repeat=f)}
        assert set(jh(tau, P).values()) == {trns(mu, v, P) for v in moved}


def test_depth_checks():
    with pytest.warns(GenericityWarning):
        jh(TameType(((0, 1, 2),), ((5, 3, 1),)), P)
    with pytest.raises(DepthError):
        jh(TameType(((0, 1, 2),), ((3, 3, 1),)), P)
    with warnings.catch_warnings():
        warnings.simplefilter("error", GenericityWarning)
        with pytest.raises(GenericityWarning):
            jh(TameType(((0, 1, 2),), ((5, 3, 1),)), P)


def test_from_affine_definition():
    x = AffElem((AffElem1((1, 0, 2), (1, -1, 0)),))
    tau = TameType.from_affine(x, ((40, 20, 3),))
    assert tau.s == ((1, 0, 2),) and tau.lam == ((39, 21, 3),)


# intersections ------------------------------------------------------------

def test_intersection_examples(sigma_table):
    aba = word_to_elem("aba")
    assert sigma_table[aba] == {((0, 0), 1), ((0, 0), 0)}
    assert sigma_table[word_to_elem("gaba")] == {((1, 1), 0)}
    assert sigma_table[AffElem1()] == {q for q in SIGMA0 if r_pair(q) in SIGMA0}
    assert len(sigma_table[AffElem1()]) == 6


def test_intersections_match_golden_with_rotations(sigma_table):
    rot = rotation()
    for row in golden.load("intersections")["rows"]:
        x = word_to_elem(row["word"])
        want = frozenset(golden.pair(q) for q in row["sigma"])
        for k in range(3):
            y = (rot ** k) * x * (rot ** k).inverse()
            assert sigma_table[y] == rotate_pairs(want, k), (row["word"], k)


def test_semantic_and_combinatorial_intersections_agree(sigma_table):
    for x, got in sigma_table.items():
        assert got == sigma_w_combinatorial(x)


def test_rotation_is_length_zero():
    rot = rotation()
    assert length(rot) == 0
    assert rot * word_to_elem("a") * rot.inverse() == word_to_elem("b")


def test_length_two_below_inner_length_three(sigma_table):
    adm = sorted(adm_plus_eta())
    for word in ("aba", "bgb", "aga"):
        y = word_to_elem(word)
        below = [x for x in adm if length(x) == 2 and bruhat_leq(x, y)]
        assert len(below) == 2
        for x in below:
            assert sigma_table[y] <= sigma_table[x] and len(sigma_table[x]) == 4
            assert sigma_table[x] - sigma_table[y] <= set(SIGMA0_OBV)


def test_length_three_sets(sigma_table):
    three = {y: sigma_table[y] for y in adm_plus_eta() if length(y) == 3}
    # inner pairs are isolated with their r-partner by aba, bgb or aga
    for q in SIGMA0_INN:
        hits = [y for y, s in three.items() if s == {q, r_pair(q)}]
        assert hits and all(y in {word_to_elem(w) for w in ("aba", "bgb", "aga")} for y in hits)
    # the six adjacent obvious pairs are each some Sigma_y
    pairs = [frozenset((a, b)) for a, b in itertools.combinations(SIGMA0_OBV, 2)
             if adjacent(vertex(a), vertex(b))]
    assert len(pairs) == 6
    assert all(pr in set(three.values()) for pr in pairs)


def test_nonadmissible_elements_meet_nothing():
    x = AffElem1((0, 1, 2), (2, 0, -2))
    assert x not in adm_plus_eta()
    assert intersect_types(((0, 1, 2),), ((60, 30, 3),), AffElem((x,)), P)[0] == frozenset()


def test_intersection_weights_are_in_both_sets():
    s, mu = ((1, 0, 2),), ((50, 25, 4),)
    x = AffElem((word_to_elem("ab"),))
    ws = intersection_weights(s, mu, x, P)
    assert ws and ws <= set(jh(TameType(s, mu), P).values())


# shapes -------------------------------------------------------------------

SHAPES = sorted(admissible_set(ETA, -1))


@pytest.mark.parametrize("f", [1, 2])
def test_shape_cardinalities(f):
    rng = random.Random(10 + f)
    for combo in itertools.product(SHAPES, repeat=f):
        shape = AffElem(combo)
        td = random_type_data(rng, f, P, 3)
        got = len(set(shape_weights(shape, td, P).values()))
        lens = shape_lengths(shape)
        if min(lens) >= 2:
            want = 1
            for ell in lens:
                want *= 2 ** (4 - ell)
            assert got == want
        if all(ell == 4 for ell in lens):
            assert got == 1


def test_shape_id_gives_six_per_embedding(rng):
    for f in (1, 2):
        td = random_type_data(rng, f, P, 3)
        assert len(shape_weights(AffElem((AffElem1(),) * f), td, P)) == 6 ** f


def test_shape_weights_equal_semantic_intersection(rng):
    for _ in range(15):
        f = rng.choice((1, 2))
        td = random_type_data(rng, f, P, 4)
        shape = AffElem(tuple(rng.choice(SHAPES) for _ in range(f)))
        got = set(shape_weights(shape, td, P).values())
        tau = td.as_type()
        assert got <= set(jh(tau, P).values())
        assert got == intersection_weights(tau.s, tau.lam, shape.star(), P)


def test_shape_weights_reject_nonadmissible():
    td = TypeData((0, 1, 2), ((40, 20, 3),))
    with pytest.raises(ValueError):
        shape_weights(AffElem((AffElem1((0, 1, 2), (2, 0, -2)),)), td, P)


def test_orientation():
    s = orientation(((3, 9, 5), (1, 2, 0)))
    for j, mj in enumerate(((3, 9, 5), (1, 2, 0))):
        from gl3ext.weyl import perm_act, perm_inv

        y = perm_act(perm_inv(s[1 - j]), mj)
        assert y[0] > y[1] > y[2]
    with pytest.raises(ValueError):
        orientation(((3, 3, 1),))
    assert s_star(s_star(s)) == s


# Galois side --------------------------------------------------------------

def test_rho_from_exponents():
    rho = rho_from_exponents(2, (5 + 7 * P, 9, 3), P, 2)
    assert rho.niveau == 2 and rho.lam == ((5, 9, 3), (7, 0, 0))
    assert rho_from_exponents(1, (30, 20, 5), P, 1).niveau == 1
    assert rho_from_exponents(3, (30, 20, 5), P, 1).niveau == 3
    with pytest.raises(ValueError):
        rho_from_exponents(4, (1, 2, 3), P, 1)


def test_json_round_trips():
    tau = TameType(((1, 2, 0), (0, 1, 2)), ((40, 20, 3), (30, 12, 5)))
    assert TameType.from_json(tau.to_json()) == tau
    rho = RhoData.from_type(tau)
    assert RhoData.from_json(rho.to_json()) == rho


# elimination --------------------------------------------------------------

def test_eliminate(rng):
    for _ in range(6):
        f = rng.choice((1, 1, 2))
        lam = random_deep_weight(rng, f, P, 8)
        rho = RhoData(tuple(rng.choice(ALL_PERMS) for _ in range(f)), lam)
        wq = set(w_question(rho, P).values())
        center = tuple(tuple(x - 1 for x in l) for l in lam)
        # a weight of the right central character outside W?
        cand = None
        while cand is None:
            v = GraphVertex(tuple((rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(f)),
                            tuple(rng.randint(0, 1) for _ in range(f)))
            try:
                sw = trns(center, v, P)
            except ValueError:
                continue
            if sw not in wq:
                cand = sw
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", GenericityWarning)
            tau = eliminate(cand, rho, P)
            js = set(jh(tau, P, need=0).values())
        assert cand in js and not js & wq


def test_eliminate_central_mismatch_and_precondition():
    rho = RhoData(((0, 1, 2),), ((50, 30, 4),))
    other = serre_nf(((40, 20, 1),), P)
    assert central_class(other.representative(), P) != central_class(((47, 29, 4),), P)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GenericityWarning)
        tau = eliminate(other, rho, P)
        assert other in set(jh(tau, P, need=0).values())
    inside = next(iter(w_question(rho, P).values()))
    with pytest.raises(ValueError):
        eliminate(inside, rho, P)
