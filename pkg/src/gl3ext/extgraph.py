"""
The extension graph on regular Serre weights.

Vertices are pairs (omega, a) with omega an f-tuple of elements of the weight lattice
Lambda_W of SL3, written per embedding as coefficient pairs (m1, m2) of omega_1 and
omega_2, and a an f-tuple of alcove bits (0 = lower alcove A, 1 = upper alcove B).
A center mu turns a vertex into a Serre weight through Trns_mu.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .weights import (
    NotRestrictedError,
    SerreWeightNF,
    central_class,
    fw_add,
    fw_sub,
    fw_eta,
    serre_nf,
)
from .weyl import (
    ETA,
    POSITIVE_ROOTS,
    AffElem1,
    perm_act,
    perm_from_cycle,
    perm_inv,
    pairing,
    vadd,
    vscale,
    vsub,
)

# ---------------------------------------------------------------------------
# the weight lattice Lambda_W
# ---------------------------------------------------------------------------

LW_ZERO = (0, 0)
OMEGA1 = (1, 0)
OMEGA2 = (0, 1)
ETA_W = (1, 1)  # omega_1 + omega_2
O1_MINUS_O2 = (1, -1)
O2_MINUS_O1 = (-1, 1)

CLASS_NAMES = {0: "0", 1: "omega1", 2: "omega2"}

# the six neighbours of a point of Lambda_W (adjacency also allows a zero step)
NEIGHBOUR_STEPS = (OMEGA1, OMEGA2, O1_MINUS_O2, (-1, 0), (0, -1), O2_MINUS_O1)
ADJ_STEPS = (LW_ZERO,) + NEIGHBOUR_STEPS


def lw_add(x, y) -> tuple:
    return (x[0] + y[0], x[1] + y[1])


def lw_sub(x, y) -> tuple:
    return (x[0] - y[0], x[1] - y[1])


def lw_neg(x) -> tuple:
    return (-x[0], -x[1])


def lw_class(m) -> int:
    """Class in Lambda_W / Lambda_R: 0, 1 (omega1) or 2 (omega2)."""
    return (m[0] - m[1]) % 3


def lw_sec(m) -> tuple:
    """Fixed section m1 omega1 + m2 omega2 -> (m1, 0, -m2)."""
    return (m[0], 0, -m[1])


def lw_from_triple(x) -> tuple:
    """Image of a character of T in Lambda_W."""
    return (x[0] - x[1], x[1] - x[2])


def lw_can(m) -> tuple:
    """Canonical lift of an element of the root lattice to a sum-zero triple."""
    if lw_class(m) != 0:
        raise ValueError(f"{m} is not in the root lattice")
    c1 = (2 * m[0] + m[1]) // 3
    c2 = (m[0] + 2 * m[1]) // 3
    return (c1, c2 - c1, -c2)


def lw_perm(s, m) -> tuple:
    """Usual action of a permutation on Lambda_W."""
    return lw_from_triple(perm_act(s, lw_sec(m)))


def lw_affine(x: AffElem1, m) -> tuple:
    """Usual action of w t_nu (nu in the root lattice) on Lambda_W: m -> w(m + nu)."""
    return lw_from_triple(x.act(lw_sec(m)))


def hex_norm(m) -> int:
    """Word length of m for the generators +-omega1, +-omega2, +-(omega1 - omega2)."""
    return (abs(m[0]) + abs(m[1]) + abs(m[0] + m[1])) // 2


def lw_str(m) -> str:
    names = {LW_ZERO: "0", OMEGA1: "w1", OMEGA2: "w2", ETA_W: "w1+w2",
             O1_MINUS_O2: "w1-w2", O2_MINUS_O1: "w2-w1"}
    return names.get(tuple(m), "%d*w1%+d*w2" % tuple(m))


# ---------------------------------------------------------------------------
# vertices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GraphVertex:
    omega: tuple  # f pairs (m1, m2)
    a: tuple  # f bits

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(tuple(int(c) for c in m) for m in self.omega))
        object.__setattr__(self, "a", tuple(int(b) for b in self.a))
        if len(self.omega) != len(self.a) or any(b not in (0, 1) for b in self.a):
            raise ValueError(f"bad vertex {self.omega}, {self.a}")

    @property
    def f(self) -> int:
        return len(self.a)

    def component(self, j: int) -> tuple:
        return (self.omega[j], self.a[j])

    def label(self) -> str:
        return " ".join("(%d,%d;%d)" % (m[0], m[1], b) for m, b in zip(self.omega, self.a))

    def to_json(self) -> dict:
        return {"omega": [list(m) for m in self.omega], "a": list(self.a)}

    @staticmethod
    def from_json(data: dict) -> "GraphVertex":
        return GraphVertex(tuple(tuple(m) for m in data["omega"]), tuple(data["a"]))

    @staticmethod
    def from_pairs(pairs: Iterable) -> "GraphVertex":
        pairs = list(pairs)
        return GraphVertex(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def pairs(self) -> tuple:
        return tuple(zip(self.omega, self.a))


def vertex(*pairs) -> GraphVertex:
    """vertex(((m1, m2), a), ...) with one pair per embedding."""
    return GraphVertex.from_pairs(pairs)


def parse_vertex(text: str) -> GraphVertex:
    """Parse '(m1,m2;a)' per embedding, embeddings separated by spaces or '/'."""
    pieces = [s for s in text.replace("/", " ").split() if s]
    pairs = []
    for piece in pieces:
        body = piece.strip("()")
        om, bit = body.split(";")
        m1, m2 = (int(c) for c in om.split(","))
        pairs.append(((m1, m2), int(bit)))
    return GraphVertex.from_pairs(pairs)


def r(v: GraphVertex) -> GraphVertex:
    """Flip every alcove bit."""
    return GraphVertex(v.omega, tuple(1 - b for b in v.a))


def act_on_vertex(x, v: GraphVertex) -> GraphVertex:
    """Usual action of an f-tuple in W_a (or of permutations) on the omega factor."""
    comps = x.components if hasattr(x, "components") else x
    om = []
    for c, m in zip(comps, v.omega):
        if isinstance(c, AffElem1):
            om.append(lw_affine(c, m))
        else:
            om.append(lw_perm(c, m))
    return GraphVertex(tuple(om), v.a)


# ---------------------------------------------------------------------------
# the table of W~_1^{+,der}
# ---------------------------------------------------------------------------

# (class of omega_{i+1}, alcove bit a_{i+1}) -> (omega^0_{i+1}, w_i)
TABLE_PP = {
    (0, 0): (LW_ZERO, perm_from_cycle("id")),
    (0, 1): (ETA_W, perm_from_cycle("(13)")),
    (2, 0): (OMEGA2, perm_from_cycle("(123)")),
    (2, 1): (O1_MINUS_O2, perm_from_cycle("(12)")),
    (1, 0): (OMEGA1, perm_from_cycle("(132)")),
    (1, 1): (O2_MINUS_O1, perm_from_cycle("(23)")),
}


def restricted_elements() -> list:
    """The six elements w t_{-omega} of W~_1^{+,der} for f = 1, as (w, omega) pairs."""
    return [(w, om) for (om, w) in TABLE_PP.values()]


def decompose(v: GraphVertex) -> tuple:
    """Lemma-style decomposition (omega, a) -> (nu, (w_i, omega0_{i+1})).

    Returns (omega0, w, nu): omega0[i] and nu[i] = omega[i] - omega0[i] per embedding,
    and w[i] read from the row keyed by embedding i+1.
    """
    f = v.f
    omega0, nu, w = [], [], [None] * f
    for i in range(f):
        om0, _ = TABLE_PP[(lw_class(v.omega[i]), v.a[i])]
        omega0.append(om0)
        nu.append(lw_sub(v.omega[i], om0))
    for i in range(f):
        k = (i + 1) % f
        w[i] = TABLE_PP[(lw_class(v.omega[k]), v.a[k])][1]
    return tuple(omega0), tuple(w), tuple(nu)


# ---------------------------------------------------------------------------
# Trns
# ---------------------------------------------------------------------------

def in_region(center, omega: Sequence, p: int) -> bool:
    """omega lies in Lambda_W^center: center - eta + sec(omega) is in the base alcove C0."""
    for c, m in zip(center, omega):
        x = vadd(c, lw_sec(m))
        for root in POSITIVE_ROOTS:
            val = pairing(x, root)
            if not (0 < val < p):
                return False
    return True


def region_points(center_j: Sequence[int], p: int) -> list:
    """All m in Lambda_W with 0 < <center_j + sec(m), alpha^vee> < p for one embedding."""
    c1 = pairing(center_j, (0, 1))
    c2 = pairing(center_j, (1, 2))
    out = []
    for m1 in range(-c1 + 1, p - c1):
        for m2 in range(-c2 + 1, p - c2):
            if 0 < c1 + c2 + m1 + m2 < p:
                out.append((m1, m2))
    return out


def trns_raw(center, v: GraphVertex, p: int, check_region: bool = True) -> tuple:
    """The weight Trns'_center(omega, a) in X*(T), before passing to normal forms."""
    f = v.f
    if len(center) != f:
        raise ValueError("center and vertex have different f")
    if check_region and not in_region(center, v.omega, p):
        raise ValueError(f"omega = {v.omega} is outside Lambda_W^mu for center {center}")
    omega0, w, nu = decompose(v)
    out = []
    for i in range(f):
        k = (i + 1) % f
        x = vadd(center[i], lw_can(nu[i]))
        x = vadd(x, lw_sec(omega0[i]))
        x = vsub(x, vscale(p, lw_sec(omega0[k])))
        out.append(vsub(perm_act(w[i], x), ETA))
    return tuple(out)


def trns(center, v: GraphVertex, p: int) -> SerreWeightNF:
    """Serre weight normal form of Trns_center(v)."""
    lam = trns_raw(center, v, p)
    try:
        return serre_nf(lam, p)
    except NotRestrictedError as exc:  # pragma: no cover - guarded by the region check
        raise NotRestrictedError(f"Trns output {lam} is not restricted; center too shallow") from exc


def trns_inverse(center, sw: SerreWeightNF, p: int) -> GraphVertex:
    """The unique vertex of Lambda_W^center x A with Trns_center(v) = sw."""
    f = len(center)
    if sw.f != f:
        raise ValueError("f mismatch")
    if central_class(sw.representative(), p) != central_class(fw_sub(center, fw_eta(f)), p):
        raise ValueError("central characters do not match")
    keys = list(TABLE_PP)
    targets = [lw_from_triple(b) for b in sw.base]
    # For each embedding i and each key at i+1, the pairings of the output pin down omega_i.
    cands = []
    for i in range(f):
        row = {}
        for key in keys:
            om0_next, w = TABLE_PP[key]
            # sec(omega_i) = w^{-1}(target + eta) + p sec(omega0_{i+1}) - center_i  (mod centre)
            tgt = vadd(lw_sec(targets[i]), ETA)
            x = vadd(perm_act(perm_inv(w), tgt), vscale(p, lw_sec(om0_next)))
            row[key] = lw_from_triple(vsub(x, center[i]))
        cands.append(row)
    for choice in itertools.product(keys, repeat=f):
        # choice[i] is the key at embedding i+1
        omega = tuple(cands[i][choice[i]] for i in range(f))
        a = [None] * f
        ok = True
        for i in range(f):
            k = (i + 1) % f
            key = choice[i]
            if lw_class(omega[k]) != key[0]:
                ok = False
                break
            a[k] = key[1]
        if not ok or not in_region(center, omega, p):
            continue
        v = GraphVertex(omega, tuple(a))
        if trns(center, v, p) == sw:
            return v
    raise ValueError(f"{sw} has no preimage under Trns for center {center}")


# ---------------------------------------------------------------------------
# adjacency and distance
# ---------------------------------------------------------------------------

def adjacent(v1: GraphVertex, v2: GraphVertex) -> bool:
    if v1.f != v2.f:
        return False
    diff = [j for j in range(v1.f) if v1.a[j] != v2.a[j]]
    if len(diff) != 1:
        return False
    j = diff[0]
    if any(v1.omega[i] != v2.omega[i] for i in range(v1.f) if i != j):
        return False
    return lw_sub(v1.omega[j], v2.omega[j]) in ADJ_STEPS


def neighbors(v: GraphVertex, center=None, p: int | None = None) -> list:
    """Adjacent vertices, restricted to Lambda_W^center when a center is given."""
    out = []
    for j in range(v.f):
        for step in ADJ_STEPS:
            om = list(v.omega)
            om[j] = lw_add(om[j], step)
            a = list(v.a)
            a[j] = 1 - a[j]
            if center is not None and not in_region(center, om, p):
                continue
            out.append(GraphVertex(tuple(om), tuple(a)))
    return out


def component_distance(x: tuple, y: tuple) -> int:
    """Distance between (omega_j, a_j) pairs in one embedding on the full lattice."""
    k = hex_norm(lw_sub(x[0], y[0]))
    delta = 0 if x[1] == y[1] else 1
    return k + ((k + delta) % 2)


def _component_bfs(x: tuple, y: tuple, allowed) -> int:
    if x == y:
        return 0
    seen = {x}
    queue = deque([(x, 0)])
    while queue:
        (m, b), d = queue.popleft()
        for step in ADJ_STEPS:
            nxt = (lw_add(m, step), 1 - b)
            if nxt in seen or not allowed(nxt[0]):
                continue
            if nxt == y:
                return d + 1
            seen.add(nxt)
            queue.append((nxt, d + 1))
    raise ValueError(f"{y} is unreachable from {x}")


def distance(v1: GraphVertex, v2: GraphVertex, center=None, p: int | None = None,
             mode: str = "auto") -> int:
    """Graph distance.

    mode "free" uses the closed formula on the full lattice, "restricted" runs a BFS
    inside Lambda_W^center (the graph is a product over embeddings, so the distance is
    a sum of per-embedding BFS distances), "bfs" runs the same BFS on a large box.
    "auto" is "restricted" when a center is given and "free" otherwise.
    """
    if v1.f != v2.f:
        raise ValueError("f mismatch")
    if mode == "auto":
        mode = "restricted" if center is not None else "free"
    total = 0
    for j in range(v1.f):
        x, y = v1.component(j), v2.component(j)
        if mode == "free":
            total += component_distance(x, y)
        elif mode == "restricted":
            if center is None:
                raise ValueError("restricted distance needs a center")
            cj, pj = center[j], p
            if not (in_region([cj], [x[0]], pj) and in_region([cj], [y[0]], pj)):
                raise ValueError("vertex outside Lambda_W^mu")
            total += _component_bfs(x, y, lambda m, cj=cj: in_region([cj], [m], pj))
        elif mode == "bfs":
            radius = hex_norm(lw_sub(x[0], y[0])) + 3
            total += _component_bfs(
                x, y, lambda m: hex_norm(lw_sub(m, x[0])) <= radius)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return total


def product_bfs_distance(v1: GraphVertex, v2: GraphVertex, center, p: int) -> int:
    """BFS on the whole product graph inside Lambda_W^center (slow; for cross-checks)."""
    if v1 == v2:
        return 0
    seen = {v1}
    queue = deque([(v1, 0)])
    while queue:
        v, d = queue.popleft()
        for u in neighbors(v, center, p):
            if u in seen:
                continue
            if u == v2:
                return d + 1
            seen.add(u)
            queue.append((u, d + 1))
    raise ValueError("unreachable")


def is_bipartite_edge(v1: GraphVertex, v2: GraphVertex) -> bool:
    return (sum(v1.a) - sum(v2.a)) % 2 == 1


# ---------------------------------------------------------------------------
# Sigma_0 and defect
# ---------------------------------------------------------------------------

SIGMA0_OBV = (
    (ETA_W, 0), (O1_MINUS_O2, 0), (O2_MINUS_O1, 0),
    (LW_ZERO, 1), (OMEGA1, 1), (OMEGA2, 1),
)
SIGMA0_INN = ((LW_ZERO, 0), (OMEGA1, 0), (OMEGA2, 0))
SIGMA0 = SIGMA0_OBV + SIGMA0_INN


def sigma_pair_str(pair) -> str:
    return "(%s,%d)" % (lw_str(pair[0]), pair[1])


def r_pair(pair) -> tuple:
    return (pair[0], 1 - pair[1])


def sigma_sets(f: int = 1) -> dict:
    """Sigma_0, its obvious and inner parts, r(Sigma_0) and the f-fold product Sigma."""
    return {
        "sigma0": frozenset(SIGMA0),
        "obv": frozenset(SIGMA0_OBV),
        "inn": frozenset(SIGMA0_INN),
        "r_sigma0": frozenset(r_pair(x) for x in SIGMA0),
        "sigma": frozenset(GraphVertex.from_pairs(c) for c in itertools.product(SIGMA0, repeat=f)),
    }


def sigma_product(f: int, factors=None) -> list:
    """Vertices of the product of per-embedding subsets (default: Sigma_0 in each)."""
    factors = factors if factors is not None else [SIGMA0] * f
    return [GraphVertex.from_pairs(c) for c in itertools.product(*factors)]


def defect(labels) -> int:
    """Number of embeddings whose Sigma_0 label is inner."""
    pairs = labels.pairs() if isinstance(labels, GraphVertex) else labels
    inn = set(SIGMA0_INN)
    for pr in pairs:
        if (tuple(pr[0]), pr[1]) not in set(SIGMA0):
            raise ValueError(f"{pr} is not in Sigma_0")
    return sum(1 for pr in pairs if (tuple(pr[0]), pr[1]) in inn)


def to_dot(vertices: Iterable[GraphVertex], name: str = "extgraph") -> str:
    vs = sorted(set(vertices))
    lines = [f"graph {name} {{"]
    ids = {v: f"v{k}" for k, v in enumerate(vs)}
    for v in vs:
        lines.append(f'  {ids[v]} [label="{v.label()}"];')
    for i, v in enumerate(vs):
        for u in vs[i + 1:]:
            if adjacent(v, u):
                lines.append(f"  {ids[v]} -- {ids[u]};")
    lines.append("}")
    return "\n".join(lines)
