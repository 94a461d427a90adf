import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from gl3ext.weights import (
    NotRestrictedError,
    WallError,
    alcove_of,
    central_class,
    depth,
    depth_in_c0,
    fw_add,
    fw_eta,
    fw_pi,
    fw_scale,
    fw_sub,
    is_regular,
    nf_central_class,
    serre_nf,
)
from gl3ext.weyl import ALL_PERMS, AffElem1, perm_act

from strategies import aff1_wa

P = 31


def restricted(p, f):
    digit = st.integers(min_value=0, max_value=p - 1)
    comp = st.tuples(digit, digit, st.integers(-50, 50)).map(
        lambda d: (d[0] + d[1] + d[2], d[1] + d[2], d[2]))
    return st.lists(comp, min_size=f, max_size=f).map(tuple)


def weights(f, lo=-80, hi=80):
    x = st.integers(lo, hi)
    return st.lists(st.tuples(x, x, x), min_size=f, max_size=f).map(tuple)


def test_alcove_examples():
    assert alcove_of(((15, 8, 0),), P).n == ((0, 0, 0),)
    assert alcove_of(((15, 8, 0),), P).letters() == ("A",)
    a = alcove_of(((29, 8, -14),), P)
    assert a.n == ((0, 0, 1),) and a.letters() == ("B",)
    with pytest.raises(WallError):
        alcove_of(((30, 0, -1),), P)


def test_depth_examples():
    # pairings with lambda + eta are 8, 8, 16
    assert depth(((15, 8, 0),), P) == 7
    with pytest.raises(WallError):
        depth(((30, 0, -1),), P)


@given(aff1_wa, weights(1, 0, 30))
def test_depth_invariant_under_affine_weyl(x, lam):
    assume(is_regular(lam, P))
    assert depth((x.dot(lam[0], P),), P) == depth(lam, P)


@given(weights(2))
def test_regular_iff_alcove_defined(lam):
    if is_regular(lam, P):
        assert depth(lam, P) >= 0
        alcove_of(lam, P)
    else:
        with pytest.raises(WallError):
            alcove_of(lam, P)


def test_depth_in_c0():
    assert depth_in_c0(((15, 8, 0),), P) == 7
    assert depth_in_c0(((29, 8, -14),), P) == -1


def test_serre_nf_examples():
    nf = serre_nf(((5, 3, 0),), P)
    assert nf.base == ((5, 3, 0),) and nf.twist == 0
    nf1 = serre_nf(((6, 4, 1),), P)
    assert nf1.base == ((5, 3, 0),) and nf1.twist == 1
    nf2 = serre_nf(((5 + P - 1, 3 + P - 1, P - 1),), P)
    # at f = 1 the shift (p - 1)(1,1,1) lies in (p - pi) X^0
    assert nf2 == nf and nf2 != nf1
    with pytest.raises(NotRestrictedError):
        serre_nf(((46, 8, -31),), P)


@pytest.mark.parametrize("f", [1, 2, 3])
def test_serre_nf_constant_on_orbits(f):
    @given(restricted(P, f), st.lists(st.integers(-5, 5), min_size=f, max_size=f))
    def check(lam, c):
        shifted = tuple(tuple(x + P * c[j] - c[(j - 1) % f] for x in lam[j]) for j in range(f))
        assert serre_nf(shifted, P) == serre_nf(lam, P)
        assert central_class(shifted, P) == central_class(lam, P)

    check()


@pytest.mark.parametrize("f", [1, 2])
def test_serre_nf_injective_on_representatives(f):
    @given(restricted(P, f), restricted(P, f))
    def check(lam, mu):
        if serre_nf(lam, P) == serre_nf(mu, P):
            # difference must lie in (p - pi) X^0: solve for c digit by digit
            d = [lam[j][2] - mu[j][2] for j in range(f)]
            assert all(lam[j][0] - mu[j][0] == d[j] and lam[j][1] - mu[j][1] == d[j] for j in range(f))
            assert sum(d[j] * P ** j for j in range(f)) % (P ** f - 1) == 0

    check()


@given(restricted(P, 2))
def test_representative_reconstructs(lam):
    nf = serre_nf(lam, P)
    assert serre_nf(nf.representative(), P) == nf
    assert nf_central_class(nf) == central_class(lam, P)


def test_central_class_examples():
    assert central_class(((0, 0, 0),), P) == 0
    lam = ((5, 3, 1), (2, 9, 4))
    for s in ALL_PERMS:
        assert central_class(((perm_act(s, lam[0])), lam[1]), P) == central_class(lam, P)
    nu = ((1, -2, 0), (3, 1, 1))
    shifted = fw_sub(fw_add(lam, fw_scale(P, nu)), fw_pi(nu))
    assert central_class(shifted, P) == central_class(lam, P)


@given(weights(3), weights(3))
def test_central_class_additive_and_pi(lam, mu):
    m = P ** 3 - 1
    assert central_class(fw_add(lam, mu), P) == (central_class(lam, P) + central_class(mu, P)) % m
    assert central_class(fw_pi(lam), P) == (P * central_class(lam, P)) % m


def test_eta():
    assert fw_eta(2) == ((1, 0, -1), (1, 0, -1))


def test_nf_json_round_trip():
    from gl3ext.weights import SerreWeightNF

    nf = serre_nf(((20, 11, 4), (7, 2, 1)), P)
    assert SerreWeightNF.from_json(nf.to_json()) == nf
