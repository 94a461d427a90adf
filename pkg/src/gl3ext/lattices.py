"""
Predicted lattice structure of tame types from the extension graph.

Everything here is a prediction read off graph distances: layers of the cosocle
filtration, the directed extension graph of a lattice with irreducible cosocle, its
submodules as closed subsets, saturation distances, and the graded constituents of the
Weyl module attached to an upper alcove weight.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .extgraph import (
    SIGMA0,
    SIGMA0_INN,
    GraphVertex,
    distance,
    lw_sec,
    lw_str,
    trns,
)
from .tametypes import TameType, _vertex_of_label, check_depth, jh
from .weights import SerreWeightNF, alcove_of, fw_add, fw_eta, serre_nf
from .weyl import ETA, perm_act, vadd, vscale, vsub

W0 = (2, 1, 0)


# ---------------------------------------------------------------------------
# distances between constituents of a type
# ---------------------------------------------------------------------------

def _embedding_matrix(tau: TameType, j: int, p: int) -> dict:
    """Distances between the nine Sigma_0 labels in embedding j, inside the type's region."""
    cj = (tau.lam[j],)
    sj = (tau.s[j],)
    verts = {q: _vertex_of_label(sj, GraphVertex.from_pairs([q])) for q in SIGMA0}
    out = {}
    for q1, q2 in itertools.product(SIGMA0, repeat=2):
        out[(q1, q2)] = distance(verts[q1], verts[q2], center=cj, p=p)
    return out


def label_distances(tau: TameType, p: int) -> dict:
    """d(label1, label2) for all pairs of Sigma-labels of the type (product metric)."""
    mats = [_embedding_matrix(tau, j, p) for j in range(tau.f)]
    labels = list(jh(tau, p))
    out = {}
    for l1 in labels:
        for l2 in labels:
            out[(l1, l2)] = sum(mats[j][(l1.component(j), l2.component(j))] for j in range(tau.f))
    return out


def _label_of(tau: TameType, sigma: SerreWeightNF, p: int, table=None) -> GraphVertex:
    table = table if table is not None else jh(tau, p)
    for lab, sw in table.items():
        if sw == sigma:
            return lab
    raise ValueError(f"{sigma} is not a constituent of {tau}")


def label_defect(lab: GraphVertex) -> int:
    inn = set(SIGMA0_INN)
    return sum(1 for q in lab.pairs() if q in inn)


# ---------------------------------------------------------------------------
# layers and the predicted graph
# ---------------------------------------------------------------------------

def predicted_layers(tau: TameType, sigma: SerreWeightNF, p: int) -> list:
    """Layer d = constituents at graph distance d from sigma."""
    table = jh(tau, p)
    root = _label_of(tau, sigma, p, table)
    dist = label_distances(tau, p)
    layers: dict = {}
    for lab, sw in table.items():
        layers.setdefault(dist[(root, lab)], set()).add(sw)
    return [layers.get(d, set()) for d in range(max(layers) + 1)]


@dataclass
class PredictedGraph:
    """Directed graph on the constituents of a type, with cosocle `root`."""

    vertices: list  # SerreWeightNF
    labels: dict  # SerreWeightNF -> GraphVertex
    edges: set  # (source, target)
    layer: dict  # SerreWeightNF -> distance from root
    root: SerreWeightNF

    def successors(self, v) -> list:
        return [b for (a, b) in self.edges if a == v]

    def predecessors(self, v) -> list:
        return [a for (a, b) in self.edges if b == v]

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for _, b in self.edges:
            indeg[b] += 1
        queue = [v for v, d in indeg.items() if d == 0]
        seen = 0
        adj: dict = {}
        for a, b in self.edges:
            adj.setdefault(a, []).append(b)
        while queue:
            v = queue.pop()
            seen += 1
            for b in adj.get(v, []):
                indeg[b] -= 1
                if indeg[b] == 0:
                    queue.append(b)
        return seen == len(self.vertices)

    def transpose(self) -> "PredictedGraph":
        return PredictedGraph(self.vertices, self.labels, {(b, a) for a, b in self.edges},
                              self.layer, self.root)

    def to_dot(self, name: str = "predicted") -> str:
        ids = {v: f"v{k}" for k, v in enumerate(self.vertices)}
        lines = [f"digraph {name} {{", '  label="predicted";']
        by_layer: dict = {}
        for v in self.vertices:
            by_layer.setdefault(self.layer[v], []).append(v)
        for d in sorted(by_layer):
            lines.append("  { rank=same; " + " ".join(ids[v] for v in by_layer[d]) + " }")
        for v in self.vertices:
            lab = self.labels[v]
            txt = " ".join("(%s,%d)" % (lw_str(m), b) for m, b in lab.pairs())
            lines.append(f'  {ids[v]} [label="{v}\\n{txt}\\nlayer {self.layer[v]}"];')
        for a, b in sorted(self.edges, key=lambda e: (ids[e[0]], ids[e[1]])):
            lines.append(f"  {ids[a]} -> {ids[b]};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        index = {v: k for k, v in enumerate(self.vertices)}
        return {
            "kind": "predicted",
            "vertices": [
                {"weight": v.to_json(), "label": self.labels[v].to_json(), "layer": self.layer[v],
                 "defect": label_defect(self.labels[v])}
                for v in self.vertices
            ],
            "edges": sorted([index[a], index[b]] for a, b in self.edges),
            "root": index[self.root],
        }


def predicted_graph(tau: TameType, sigma: SerreWeightNF, p: int) -> PredictedGraph:
    """Edge k1 -> k2 iff d(k1, k2) = 1 and d(sigma, k1) <= d(sigma, k2)."""
    table = jh(tau, p)
    root = _label_of(tau, sigma, p, table)
    dist = label_distances(tau, p)
    verts = sorted(table.values())
    lab_of = {sw: lab for lab, sw in table.items()}
    layer = {sw: dist[(root, lab_of[sw])] for sw in verts}
    edges = set()
    for k1 in verts:
        for k2 in verts:
            if k1 == k2:
                continue
            if dist[(lab_of[k1], lab_of[k2])] == 1 and layer[k1] <= layer[k2]:
                edges.add((k1, k2))
    return PredictedGraph(verts, lab_of, edges, layer, sigma)


def is_closed(subset: frozenset, g: PredictedGraph) -> bool:
    return all(b in subset for (a, b) in g.edges if a in subset)


def submodules(g: PredictedGraph, bound: int = 81) -> list:
    """All subsets closed under out-edges, by recursion over a topological order."""
    n = len(g.vertices)
    if n > bound:
        raise ValueError(f"{n} vertices exceed the bound {bound}")
    succ: dict = {v: set() for v in g.vertices}
    for a, b in g.edges:
        succ[a].add(b)
    # reachability closure
    reach = {}
    for v in g.vertices:
        seen, stack = set(), [v]
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach[v] = frozenset(seen)
    # process vertices so that every vertex comes after all of its successors
    order = sorted(g.vertices, key=lambda v: -g.layer[v])
    out = [frozenset()]
    for v in order:
        new = []
        for s in out:
            if reach[v] <= s:
                new.append(s | {v})
        out.extend(new)
    return out


def count_submodules(g: PredictedGraph, bound: int = 81) -> int:
    return len(submodules(g, bound))


def saturation_predictions(tau: TameType, p: int) -> dict:
    """Predicted saturation distances d_sat(sigma, kappa) = d_gph(sigma, kappa)."""
    table = jh(tau, p)
    dist = label_distances(tau, p)
    return {(table[l1], table[l2]): d for (l1, l2), d in dist.items()}


def op_weight(tau: TameType, sigma: SerreWeightNF, p: int) -> list:
    """Constituents at distance 3f from sigma."""
    layers = predicted_layers(tau, sigma, p)
    return sorted(layers[3 * tau.f]) if len(layers) > 3 * tau.f else []


# ---------------------------------------------------------------------------
# the Weyl module of an upper alcove weight
# ---------------------------------------------------------------------------

def in_hull_eta(m) -> bool:
    """m lies in the convex hull of the Weyl orbit of eta (dominance test with rational coordinates)."""
    x = lw_sec(m)
    mean = Fraction(sum(x), 3)
    y = sorted((Fraction(c) - mean for c in x), reverse=True)
    return y[0] <= 1 and y[0] + y[1] <= 1


def lambda_eta() -> list:
    """Points of Lambda_W in the convex hull of W.eta, by a scan of a box."""
    return [(m1, m2) for m1 in range(-3, 4) for m2 in range(-3, 4) if in_hull_eta((m1, m2))]


def _weyl_orbit_eta() -> set:
    from .extgraph import lw_perm
    from .weyl import ALL_PERMS

    return {lw_perm(s, (1, 1)) for s in ALL_PERMS}


def lambda_below_eta0() -> list:
    """Per embedding: (omega, a) with omega in Lambda_eta and a = 0 forced on W.eta."""
    orbit = _weyl_orbit_eta()
    out = []
    for m in lambda_eta():
        for b in (0, 1):
            if m in orbit and b == 1:
                continue
            out.append((m, b))
    return out


def mu_op(mu, p: int) -> tuple:
    """w0(mu - p eta + eta) - eta per embedding."""
    return tuple(vsub(perm_act(W0, vadd(vsub(m, vscale(p, ETA)), ETA)), ETA) for m in mu)


def weyl_jh(mu, p: int) -> list:
    """Graded constituents of the Weyl module V(mu^op + p eta) restricted to the finite group.

    Returns (label, weight, grade) with grade the graph distance from (0, 1).
    """
    alc = alcove_of(mu, p)
    if alc.letters() != ("B",) * len(mu):
        raise ValueError(f"{mu} is not in the upper alcove in every embedding")
    f = len(mu)
    center = fw_add(mu_op(mu, p), fw_eta(f))
    check_depth(center, p, 2, "weyl center")
    origin = GraphVertex(((0, 0),) * f, (1,) * f)
    per = lambda_below_eta0()
    out = []
    for pairs in itertools.product(per, repeat=f):
        v = GraphVertex.from_pairs(pairs)
        out.append((v, trns(center, v, p), distance(origin, v, center=center, p=p)))
    return out


# node data for f = 1: formula for the highest weight (in x, y, z, p), tensor factor, grade
WEYL1_NODES = {
    "B": (lambda x, y, z, p: (x, y, z), "0", 0),
    "A": (lambda x, y, z, p: (z + p - 2, y, x - p + 2), "0", 1),
    "C": (lambda x, y, z, p: (x, z + p - 1, y + 1), "w2", 1),
    "D": (lambda x, y, z, p: (y - 1, x - p + 1, z), "w1", 1),
    "E": (lambda x, y, z, p: (y + p - 1, z + p - 1, x - p + 2), "w2", 2),
    "F": (lambda x, y, z, p: (z + p - 2, x - p + 1, y - p + 1), "w1", 2),
    "G": (lambda x, y, z, p: (z + p - 2, y, x - p + 2), "w1+w2", 3),
}

# nonzero weights of the small tensor factors, with central characters matching the node weights
FACTOR_WEIGHTS = {
    "0": [(0, 0, 0)],
    "w1": [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
    "w2": [(0, 0, -1), (0, -1, 0), (-1, 0, 0)],
    "w1+w2": [(1, 0, -1), (1, -1, 0), (0, 1, -1), (-1, 1, 0), (0, -1, 1), (-1, 0, 1)],
}


def weyl1_node_weights(mu, p: int) -> dict:
    """For f = 1: node letter -> set of normal forms of (highest weight + weight of the factor)."""
    x, y, z = mu[0]
    out = {}
    for name, (fn, factor, _) in WEYL1_NODES.items():
        base = fn(x, y, z, p)
        out[name] = {serre_nf((vadd(base, e),), p) for e in FACTOR_WEIGHTS[factor]}
    return out


def weyl1_node_of_label(pair) -> str:
    """Node letter of a per-embedding label (omega, a) of Lambda below (eta, 0)."""
    from .extgraph import lw_perm
    from .weyl import ALL_PERMS

    m, b = pair
    orb = lambda q: {lw_perm(s, q) for s in ALL_PERMS}
    if m == (0, 0):
        return "B" if b == 1 else "A"
    if m in orb((0, 1)):
        return "C" if b == 0 else "E"
    if m in orb((1, 0)):
        return "D" if b == 0 else "F"
    if m in orb((1, 1)):
        return "G"
    raise ValueError(f"{pair} is not in Lambda below (eta, 0)")
