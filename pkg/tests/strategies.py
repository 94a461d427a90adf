"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from gl3ext.weyl import ALL_PERMS, AffElem, AffElem1

perms = st.sampled_from(ALL_PERMS)
small = st.integers(min_value=-3, max_value=3)
triples = st.tuples(small, small, small)
aff1 = st.builds(AffElem1, perms, triples)
root_triples = st.tuples(small, small).map(lambda ab: (ab[0], ab[1], -ab[0] - ab[1]))
aff1_wa = st.builds(AffElem1, perms, root_triples)


def aff(f):
    return st.lists(aff1, min_size=f, max_size=f).map(lambda cs: AffElem(tuple(cs)))
