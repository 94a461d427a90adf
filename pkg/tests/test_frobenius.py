import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gl3ext.frobenius import (
    MonoMat,
    character_invariant,
    compose_phi_f,
    diag,
    herzig_characters,
    herzig_twist,
    inertial_type_of,
    negate_invariant,
    perm_mat,
    phi_matrices,
    reflected_type,
    round_trip,
    type_characters,
    type_invariant,
    type_phi_f,
    types_equivalent,
)
from gl3ext.tametypes import TameType, TypeData, random_type_data
from gl3ext.weyl import ALL_PERMS, ETA, AffElem, AffElem1, admissible_set, monomial_matrix_product, t

from strategies import aff1, perms, triples

P = 101
SHAPES = sorted(admissible_set(ETA, -1))
exps = st.tuples(*[st.integers(-20, 20)] * 3)
monomats = st.builds(MonoMat, perms, exps)


# monomial matrices --------------------------------------------------------

@given(aff1, aff1)
def test_product_matches_grid_oracle(x, y):
    prod = MonoMat.from_elem(x) * MonoMat.from_elem(y)
    assert prod.to_elem() == x * y
    grid = monomial_matrix_product(x.matrix(), y.matrix())
    assert MonoMat.from_grid(grid) == prod


@given(monomats, monomats, monomats)
def test_product_associative_and_permutations_compose(a, b, c):
    assert (a * b) * c == a * (b * c)
    ab = a * b
    assert ab.sigma == tuple(a.sigma[b.sigma[m]] for m in range(3))
    assert sum(ab.exps) == sum(a.exps) + sum(b.exps)


def test_from_grid_rejects_non_monomial():
    with pytest.raises(ValueError):
        MonoMat.from_grid([[0, 1, None], [None, None, None], [None, None, 2]])
    with pytest.raises(ValueError):
        MonoMat((0, 0, 1), (0, 0, 0))


def test_frobenius_scales_exponents_and_units():
    m = MonoMat.diagonal_units(("u", "v", "w")) * diag((1, 2, 3))
    f2 = m.frobenius(2, 5)
    assert f2.exps == (25, 50, 75) and f2.tags[0] == (("u", 25),)


def test_render_and_json():
    m = MonoMat((1, 0, 2), (3, -1, 0), ((("u", 1),), (), ()))
    text = m.render()
    assert "u·v^3" in text and "1·v^-1" in text
    assert m.to_json()["sigma"] == [2, 1, 3]


# phi^f --------------------------------------------------------------------

@given(monomats)
def test_compose_f1_is_identity_operation(m):
    assert compose_phi_f([m], P) == m


@given(triples, triples)
def test_compose_diagonal_f2(l0, l1):
    got = compose_phi_f([diag(l0), diag(l1)], P)
    assert got.sigma == (0, 1, 2)
    assert got.exps == tuple(a + P * b for a, b in zip(l1, l0))


@given(monomats, monomats, monomats)
def test_compose_permutation_is_product(a, b, c):
    got = compose_phi_f([a, b, c], P)
    want = c * b * a
    assert got.sigma == want.sigma


def test_phi_matrices_construction(rng):
    for _ in range(20):
        f = rng.choice((1, 2, 3))
        td = random_type_data(rng, f, P, 3)
        ident = phi_matrices(AffElem((AffElem1(),) * f), td)
        for j in range(f):
            assert sorted(ident[j].exps) == sorted(td.mu[f - 1 - j])
        shape = AffElem(tuple(rng.choice(SHAPES) for _ in range(f)))
        mats = phi_matrices(shape, td)
        for j in range(f):
            assert mats[j] == MonoMat.from_elem(shape[j]) * ident[j]


def test_translation_shape_shifts_exponents():
    td = TypeData((0, 1, 2), ((40, 20, 3),))
    b_id = phi_matrices(AffElem((AffElem1(),)), td)[0]
    b_t = phi_matrices(AffElem((t((1, 0, -1)),)), td)[0]
    assert b_t == diag((1, 0, -1)) * b_id


def test_shape_and_type_f_mismatch():
    with pytest.raises(ValueError):
        phi_matrices(AffElem((AffElem1(),)), TypeData((0, 1, 2), ((40, 20, 3), (30, 10, 2))))


# inertial types -----------------------------------------------------------

@pytest.mark.parametrize("s0", [(0, 1, 2), (1, 0, 2), (1, 2, 0)])
@pytest.mark.parametrize("f", [1, 2])
def test_inertial_type_against_explicit_recipe(s0, f, rng):
    for _ in range(10):
        lam = tuple(tuple(rng.randrange(P) for _ in range(3)) for _ in range(f))
        tau = TameType((s0,) + ((0, 1, 2),) * (f - 1), lam)
        phif = type_phi_f(tau, P)
        assert type_invariant(tau, P) == herzig_characters(s0, lam, P)
        res = inertial_type_of(phif, P, f)
        assert res.niveau == {(0, 1, 2): 1, (1, 0, 2): 2, (1, 2, 0): 3}[s0]
        assert types_equivalent(res.tau, tau, P)


def test_inertial_type_single_digit():
    res = inertial_type_of(diag((30, 20, 5)), P, 1)
    assert res.tau == TameType(((0, 1, 2),), ((30, 20, 5),)) and res.niveau == 1


def test_herzig_twist_is_equivalence(rng):
    for _ in range(30):
        f = rng.choice((1, 2, 3))
        tau = TameType(tuple(rng.choice(ALL_PERMS) for _ in range(f)),
                       tuple(tuple(rng.randrange(P) for _ in range(3)) for _ in range(f)))
        s = tuple(rng.choice(ALL_PERMS) for _ in range(f))
        assert types_equivalent(herzig_twist(tau, s), tau, P)


@pytest.mark.parametrize("f", [1, 2])
def test_round_trip_every_shape(f):
    rng = random.Random(100 + f)
    for _ in range(3):
        td = random_type_data(rng, f, P, 5)
        for combo in itertools.product(SHAPES, repeat=f):
            res = round_trip(AffElem(combo), td, P)
            assert res["ok"], (combo, td)


def test_shape_identity_recovers_the_type(rng):
    for f in (1, 2, 3):
        td = random_type_data(rng, f, P, 5)
        res = round_trip(AffElem((AffElem1(),) * f), td, P)
        # the recovered representation carries the inverse characters of tau(s_tau, -mu)
        assert type_invariant(res["recovered"].tau, P) == negate_invariant(type_characters(td, P), P, f)
        assert types_equivalent(reflected_type(AffElem((AffElem1(),) * f), td), td.as_type(), P)


def test_units_do_not_change_inertial_type(rng):
    td = random_type_data(rng, 2, P, 5)
    shape = AffElem((SHAPES[3], SHAPES[7]))
    plain = compose_phi_f(phi_matrices(shape, td), P)
    with_units = compose_phi_f(phi_matrices(shape, td, units=True), P)
    assert character_invariant(plain, P, 2) == character_invariant(with_units, P, 2)
    assert with_units.tags != plain.tags
