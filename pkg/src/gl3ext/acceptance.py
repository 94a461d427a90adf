"""
The eleven acceptance checks, shared by the test suite and `gl3ext selftest`.

Every check returns a CheckResult with a verdict, a short detail string and its
wall-clock time; a check passes only when its verdict holds within its time budget.
"""
from __future__ import annotations

import itertools
import random
import time
import warnings
from collections import deque
from dataclasses import dataclass, field

from . import golden
from .extgraph import (
    SIGMA0,
    TABLE_PP,
    GraphVertex,
    adjacent,
    hex_norm,
    in_region,
    lw_add,
    lw_class,
    lw_perm,
    lw_sec,
    neighbors,
    trns,
    trns_raw,
)
from .frobenius import negate_invariant, round_trip, type_characters, type_invariant
from .idealcalc import DEFAULT_PRIME, SECOND_PARAMS, DEFAULT_PARAMS, discrepancy_report, verify_all
from .lattices import (
    label_defect,
    lambda_below_eta0,
    mu_op,
    predicted_graph,
    saturation_predictions,
    submodules,
    weyl1_node_of_label,
    weyl_jh,
)
from .tametypes import (
    GenericityWarning,
    RhoData,
    TameType,
    TypeData,
    adm_plus_eta,
    intersect_types,
    jh,
    obvious_weights,
    random_deep_weight,
    random_type_data,
    rotate_pairs,
    rotation,
    shape_lengths,
    shape_weights,
    w_question,
)
from .weights import alcove_of, central_class, fw_eta, fw_sub, serre_nf
from .weyl import (
    ALL_PERMS,
    ALPHA,
    BETA,
    ETA,
    GAMMA,
    GAMMA_PLUS,
    AffElem,
    AffElem1,
    admissible_set,
    enumerate_window,
    perm_act,
    perm_from_cycle,
    perm_inv,
    t,
    vadd,
    vscale,
    word_to_elem,
)


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0
    budget: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.budget

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} {mark}  {self.name}  "
                f"[{self.seconds:.1f}s / {self.budget:.0f}s]  {self.detail}")

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "ok": self.ok,
                "seconds": round(self.seconds, 3), "budget": self.budget, "detail": self.detail}


def _timed(number: int, name: str, budget: float, fn, *args) -> CheckResult:
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GenericityWarning)
        ok, detail, data = fn(*args)
    return CheckResult(number, name, ok, detail, time.perf_counter() - start, budget, data)


# ---------------------------------------------------------------------------
# 1. the table of W~_1^{+,der}
# ---------------------------------------------------------------------------

def _check_table_pp(p: int = 31, mu=(15, 8, 0)):
    rows = golden.load("table_pp")["rows"]
    bad = []
    seen = set()
    for row in rows:
        om = tuple(row["omega_next"])
        w = perm_from_cycle(row["w"])
        key = (row["class"], 0 if row["alcove"] == "A" else 1)
        seen.add(key)
        if TABLE_PP.get(key) != (om, w):
            bad.append(f"row {key}: code has {TABLE_PP.get(key)}")
            continue
        # w t_{-omega} moves the base alcove to the alcove named in the table
        x = AffElem1(w, vscale(-1, lw_sec(om)))
        letter = alcove_of((x.dot(mu, p),), p).letters()[0]
        if letter != row["alcove"] or lw_class(om) != row["class"]:
            bad.append(f"row {key}: alcove {letter}, class {lw_class(om)}")
    if seen != set(TABLE_PP):
        bad.append("row keys differ")
    return not bad, "; ".join(bad) or f"{len(rows)} rows match", {}


# ---------------------------------------------------------------------------
# 2. Trns centered at mu + eta for f = 1
# ---------------------------------------------------------------------------

def _check_table_weights():
    data = golden.load("table_weights")
    p = data["example"]["p"]
    mu = tuple(data["example"]["mu"])
    center = (vadd(mu, ETA),)
    bad = []
    for row in data["rows"]:
        om, a = golden.pair(row["vertex"])
        got = trns(center, GraphVertex((om,), (a,)), p)
        x = AffElem1(perm_from_cycle(row["w"]), tuple(row["nu"]))
        want = serre_nf((x.dot(vadd(mu, tuple(row["shift"])), p),), p)
        if got != want:
            bad.append(f"{row['vertex']}: {got} vs {want}")
    return not bad, "; ".join(bad) or f"{len(data['rows'])} values match", {}


# ---------------------------------------------------------------------------
# 3. intersections
# ---------------------------------------------------------------------------

def _check_intersections(p: int = 101, seed: int = 0):
    rows = golden.load("intersections")["rows"]
    mu = ((45, 20, 3),)
    rot = rotation()
    bad, count = [], 0
    for row in rows:
        x = word_to_elem(row["word"])
        want = frozenset(golden.pair(q) for q in row["sigma"])
        for k in (0, 1, 2):
            y = (rot ** k) * x * (rot ** k).inverse()
            exp = rotate_pairs(want, k)
            for s in ALL_PERMS:
                got = intersect_types((s,), mu, AffElem((y,)), p)[0]
                count += 1
                if got != exp:
                    bad.append(f"{row['word'] or 'Id'} rotated {k}, s={s}")
    # elements outside Adm+(eta)
    rng = random.Random(seed)
    adm = adm_plus_eta()
    pool = [x for x in enumerate_window(4) if x.is_in_affine_weyl() and x not in adm]
    rng.shuffle(pool)
    tested = 0
    for x in pool:
        if tested == 20:
            break
        other = TameType.from_affine(AffElem((x,)), ((46, 21, 4),))
        try:
            if alcove_of(fw_sub(other.lam, fw_eta(1)), p).n != ((0, 0, 0),):
                continue
        except ValueError:
            continue
        tested += 1
        if intersect_types(((0, 1, 2),), mu, AffElem((x,)), p)[0]:
            bad.append(f"{x} is not admissible but meets")
    if tested < 20:
        bad.append(f"only {tested} non-admissible samples")
    return not bad, "; ".join(bad[:5]) or f"{count} table cases and {tested} non-admissible elements", {}


# ---------------------------------------------------------------------------
# 4. cardinalities
# ---------------------------------------------------------------------------

def _check_cardinalities(p: int = 101, seed: int = 0, samples: int = 50):
    rng = random.Random(seed)
    bad = []
    for f in (1, 2, 3):
        for _ in range(samples):
            lam = random_deep_weight(rng, f, p, 4)
            s = tuple(rng.choice(ALL_PERMS) for _ in range(f))
            tau = TameType(s, lam)
            n_jh = len(set(jh(tau, p).values()))
            rho = RhoData(s, lam)
            n_wq = len(set(w_question(rho, p).values()))
            n_obv = len(set(obvious_weights(rho, p).values()))
            if (n_jh, n_wq, n_obv) != (9 ** f, 9 ** f, 6 ** f):
                bad.append(f"f={f} {tau}: {n_jh}, {n_wq}, {n_obv}")
    shapes = sorted(admissible_set(ETA, -1))
    n_shape = 0
    for f in (1, 2):
        combos = list(itertools.product(shapes, repeat=f))
        for combo in combos:
            shape = AffElem(combo)
            lens = shape_lengths(shape)
            if min(lens) < 2:
                continue
            td = random_type_data(rng, f, p, 3)
            got = len(set(shape_weights(shape, td, p).values()))
            want = 1
            for ell in lens:
                want *= 2 ** (4 - ell)
            n_shape += 1
            if got != want:
                bad.append(f"shape {shape}: {got} vs {want}")
    return not bad, "; ".join(bad[:5]) or f"{3 * samples} types, {n_shape} shapes", {}


# ---------------------------------------------------------------------------
# 5. extension graph degree
# ---------------------------------------------------------------------------

def _check_degree(p: int = 101, seed: int = 0):
    rng = random.Random(seed)
    bad, degrees = [], {}
    for f in (1, 2):
        center = random_deep_weight(rng, f, p, 10)
        for _ in range(20):
            v = GraphVertex(tuple((rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(f)),
                            tuple(rng.randint(0, 1) for _ in range(f)))
            nb = neighbors(v, center, p)
            degrees.setdefault(f, set()).add(len(nb))
            if len(nb) != 7 ** f:
                bad.append(f"f={f}: degree {len(nb)}, expected {7 ** f}")
            for u in nb:
                if (sum(u.a) - sum(v.a)) % 2 != 1:
                    bad.append(f"f={f}: edge inside one parity class")
                if not adjacent(u, v) or not adjacent(v, u):
                    bad.append(f"f={f}: adjacency not symmetric")
    summary = ", ".join(f"f={f}: degrees {sorted(d)}" for f, d in degrees.items())
    uniq = list(dict.fromkeys(bad))
    return not bad, "; ".join(uniq[:3] + [summary]) if bad else summary, {"degrees": degrees}


# ---------------------------------------------------------------------------
# 6. Trns
# ---------------------------------------------------------------------------

_BALL = {r: [(m1, m2) for m1 in range(-r, r + 1) for m2 in range(-r, r + 1) if hex_norm((m1, m2)) <= r]
         for r in (4, 5)}


def _random_region_vertex(rng, center, p, radius: int = 5) -> GraphVertex:
    om = []
    for cj in center:
        pts = [q for q in _BALL[radius] if in_region([cj], [q], p)]
        om.append(rng.choice(pts))
    return GraphVertex(tuple(om), tuple(rng.randint(0, 1) for _ in center))


def _check_trns(p: int = 101, seed: int = 0, pairs: int = 10_000, coords: int = 1000):
    rng = random.Random(seed)
    bad = []
    centers = [random_deep_weight(rng, rng.choice((1, 2)), p, 8) for _ in range(20)]
    collisions = 0
    for k in range(pairs):
        center = centers[k % len(centers)]
        v1 = _random_region_vertex(rng, center, p)
        v2 = _random_region_vertex(rng, center, p)
        w1, w2 = trns(center, v1, p), trns(center, v2, p)
        cls = central_class(fw_sub(center, fw_eta(len(center))), p)
        if central_class(w1.representative(), p) != cls:
            bad.append(f"central character of {v1.label()}")
        if v1 != v2 and w1 == w2:
            collisions += 1
    if collisions:
        bad.append(f"{collisions} collisions")
    done = 0
    while done < coords:
        f = rng.choice((1, 2))
        mu = random_deep_weight(rng, f, p, 12)
        om1 = _random_region_vertex(rng, mu, p, 4).omega
        lam = tuple(vadd(x, ETA) for x in trns_raw(mu, GraphVertex(om1, (0,) * f), p))
        w = [TABLE_PP[(lw_class(om1[(i + 1) % f]), 0)][1] for i in range(f)]
        v2 = _random_region_vertex(rng, lam, p, 4)
        tgt = tuple(lw_add(lw_perm(perm_inv(w[i]), v2.omega[i]), om1[i]) for i in range(f))
        if not in_region(mu, tgt, p):
            continue
        done += 1
        if trns(lam, v2, p) != trns(mu, GraphVertex(tgt, v2.a), p):
            bad.append(f"change of coordinates at {mu}, {om1}, {v2.label()}")
    return not bad, "; ".join(bad[:5]) or f"{pairs} pairs, {coords} coordinate changes", {}


# ---------------------------------------------------------------------------
# 7. adjoint and admissible sets
# ---------------------------------------------------------------------------

def adm_by_subwords(lam, base: int) -> frozenset:
    """Adm(lam) as the union of the subword sets of reduced words found by a Cayley graph BFS."""
    k = sum(lam) // 3
    if sum(lam) != 3 * k:
        raise ValueError("only central shifts of root lattice weights are supported")
    lam0 = tuple(x - k for x in lam)
    gens = (ALPHA, BETA, GAMMA_PLUS if base > 0 else GAMMA)
    depth = sum(abs(lam0[i] - lam0[j]) for i, j in ((0, 1), (1, 2), (0, 2)))
    word = {AffElem1(): ()}
    queue = deque([AffElem1()])
    while queue:
        x = queue.popleft()
        if len(word[x]) == depth:
            continue
        for i, g in enumerate(gens):
            y = x * g
            if y not in word:
                word[y] = word[x] + (i,)
                queue.append(y)
    out = set()
    for s in ALL_PERMS:
        prods = {AffElem1()}
        for i in word[t(perm_act(s, lam0))]:
            prods |= {z * gens[i] for z in prods}
        out |= prods
    c = t((k, k, k))
    return frozenset(x * c for x in out)


def _random_elem(rng, f: int) -> AffElem:
    return AffElem(tuple(AffElem1(rng.choice(ALL_PERMS), tuple(rng.randint(-4, 4) for _ in range(3)))
                         for _ in range(f)))


def _check_adjoint(seed: int = 0, pairs: int = 1000):
    rng = random.Random(seed)
    bad = []
    for _ in range(pairs):
        f = rng.randint(1, 3)
        x, y = _random_elem(rng, f), _random_elem(rng, f)
        if (x * y).star() != y.star() * x.star():
            bad.append(f"star fails on {x}, {y}")
    lam = (2, 1, 0)
    minus, plus = admissible_set(lam, -1), admissible_set(lam, +1)
    image = {x.star() for x in minus}
    if image != set(plus) or len(image) != len(minus):
        bad.append("star is not a bijection Adm-(2,1,0) -> Adm+(2,1,0)")
    recorded = golden.load("adm_counts")["counts"]
    counts = {}
    for key, n in recorded.items():
        ltxt, sign = key.split(";")
        lam = tuple(int(c) for c in ltxt.split(","))
        base = 1 if sign == "+" else -1
        got = admissible_set(lam, base)
        oracle = adm_by_subwords(lam, base)
        counts[key] = len(got)
        if got != oracle or len(got) != n:
            bad.append(f"Adm{sign}{lam}: {len(got)} vs oracle {len(oracle)} vs recorded {n}")
    return not bad, "; ".join(bad[:5]) or f"{pairs} pairs; |Adm| = {counts}", {"counts": counts}


# ---------------------------------------------------------------------------
# 8. phi-module round trip
# ---------------------------------------------------------------------------

def _check_round_trip(p: int = 101, seed: int = 0, types: int = 20):
    rng = random.Random(seed)
    shapes = sorted(admissible_set(ETA, -1))
    bad, n = [], 0
    for f in (1, 2):
        for _ in range(types):
            td = random_type_data(rng, f, p, 5)
            for combo in itertools.product(shapes, repeat=f):
                n += 1
                if not round_trip(AffElem(combo), td, p)["ok"]:
                    bad.append(f"{combo} for {td}")
            ident = round_trip(AffElem((AffElem1(),) * f), td, p)
            inv = type_invariant(ident["recovered"].tau, p)
            if inv != negate_invariant(type_characters(td, p), p, f):
                bad.append(f"shape Id does not return {td}")
    return not bad, "; ".join(bad[:5]) or f"{n} round trips", {}


# ---------------------------------------------------------------------------
# 9. ideal lemmas
# ---------------------------------------------------------------------------

def _check_ideals(p: int = DEFAULT_PRIME):
    bad, verdicts = [], {}
    for params in (DEFAULT_PARAMS, SECOND_PARAMS):
        for rep in verify_all(params, p):
            verdicts.setdefault(rep.name, []).append(rep.holds)
            if not rep.holds:
                bad.append(f"{rep.name} at {params}")
    report = discrepancy_report(DEFAULT_PARAMS, p)
    readings = {(r["topic"], r["reading"]): r["holds"] for r in report["readings"]}
    if any(not isinstance(v, bool) for v in readings.values()):
        bad.append("indefinite discrepancy verdict")
    detail = ", ".join(f"{k}: {v}" for k, v in verdicts.items())
    return not bad, "; ".join(bad) or detail, {"verdicts": verdicts, "readings": report["readings"]}


# ---------------------------------------------------------------------------
# 10. lattice predictions
# ---------------------------------------------------------------------------

def _closed_bruteforce(g) -> int:
    verts = g.vertices
    count = 0
    for mask in range(1 << len(verts)):
        sub = {v for i, v in enumerate(verts) if mask >> i & 1}
        if all(b in sub for (a, b) in g.edges if a in sub):
            count += 1
    return count


def _check_lattices(p: int = 101, seed: int = 0, types: int = 100):
    rng = random.Random(seed)
    bad = []
    for k in range(types):
        f = 1 if k % 2 == 0 else 2
        lam = random_deep_weight(rng, f, p, 13)
        tau = TameType(tuple(rng.choice(ALL_PERMS) for _ in range(f)), lam)
        table = jh(tau, p)
        sat = saturation_predictions(tau, p)
        verts = list(table.values())
        for lab, sw in table.items():
            row = [sat[(sw, x)] for x in verts]
            dfc = label_defect(lab)
            if max(row) != 3 * f - dfc:
                bad.append(f"{tau}: row max {max(row)} for defect {dfc}")
            if dfc == 0 and row.count(3 * f) != 1:
                bad.append(f"{tau}: {row.count(3 * f)} weights at distance {3 * f}")
        if f == 1 or k < 6:
            for a in verts:
                if sat[(a, a)] != 0:
                    bad.append("nonzero diagonal")
                for b in verts:
                    if sat[(a, b)] != sat[(b, a)] or (a != b and sat[(a, b)] == 0):
                        bad.append("not a metric")
                    for c in verts:
                        if sat[(a, c)] > sat[(a, b)] + sat[(b, c)]:
                            bad.append("triangle inequality")
        if f == 1 or k < 4:
            sigmas = verts if f == 1 else rng.sample(verts, 3)
            for sw in sigmas:
                g = predicted_graph(tau, sw, p)
                if not g.is_acyclic():
                    bad.append("cycle in predicted graph")
                for v in g.vertices:
                    if v != sw and not any(g.layer[a] < g.layer[v] for a in g.predecessors(v)):
                        bad.append("vertex without a monotone path")
                if f == 1 and len(submodules(g)) != _closed_bruteforce(g):
                    bad.append(f"submodule count for {sw}")
    uniq = list(dict.fromkeys(bad))
    return not bad, "; ".join(uniq[:5]) or f"{types} types", {}


# ---------------------------------------------------------------------------
# 11. Weyl module grading
# ---------------------------------------------------------------------------

def _bfs_ball(origin: GraphVertex, center, p: int, radius: int) -> dict:
    """Distances from origin in the product graph inside Lambda_W^center, up to radius."""
    dist = {origin: 0}
    queue = deque([origin])
    while queue:
        v = queue.popleft()
        if dist[v] == radius:
            continue
        for u in neighbors(v, center, p):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _check_weyl(p: int = 31):
    bad = []
    per = lambda_below_eta0()
    if len(per) != 20:
        bad.append(f"{len(per)} labels per embedding")
    table = golden.load("table_weyl1")
    factors = {"0": [(0, 0, 0)], "w1": [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
               "w2": [(0, 0, -1), (0, -1, 0), (-1, 0, 0)],
               "w1+w2": [(1, 0, -1), (1, -1, 0), (0, 1, -1), (-1, 1, 0), (0, -1, 1), (-1, 0, 1)]}
    for mu in (((29, 8, -14),), ((30, 12, -10),), ((40, 25, 0), (35, 20, -2))):
        f = len(mu)
        res = weyl_jh(mu, p)
        if len(res) != 20 ** f:
            bad.append(f"{mu}: {len(res)} constituents")
        center = tuple(vadd(m, ETA) for m in mu_op(mu, p))
        origin = GraphVertex(((0, 0),) * f, (1,) * f)
        dist = _bfs_ball(origin, center, p, 3 * f)
        for v, _, grade in res:
            if grade != dist.get(v):
                bad.append(f"grade of {v.label()}")
        if f == 1:
            x, y, z = mu[0]
            env = {"x": x, "y": y, "z": z, "p": p}
            got: dict = {}
            grades: dict = {}
            for v, sw, grade in res:
                node = weyl1_node_of_label(v.pairs()[0])
                got.setdefault(node, set()).add(sw)
                grades.setdefault(node, set()).add(grade)
            for node, spec in table["nodes"].items():
                hw = tuple(golden.eval_linear(e, env) for e in spec["weight"])
                want = {serre_nf((vadd(hw, e),), p) for e in factors[spec["factor"]]}
                if got.get(node) != want or grades.get(node) != {spec["grade"]}:
                    bad.append(f"{mu}: node {node}")
    return not bad, "; ".join(bad[:5]) or "20 labels per embedding, grades and nodes match", {}


CHECKS = {
    1: ("TablePP reproduction", 1.0, _check_table_pp),
    2: ("TableWeights reproduction", 1.0, _check_table_weights),
    3: ("Intersections reproduction", 10.0, _check_intersections),
    4: ("cardinalities", 30.0, _check_cardinalities),
    5: ("extension graph degree", 5.0, _check_degree),
    6: ("Trns properties", 60.0, _check_trns),
    7: ("adjoint and admissibility", 30.0, _check_adjoint),
    8: ("phi-module round trip", 60.0, _check_round_trip),
    9: ("ideal lemmas", 120.0, _check_ideals),
    10: ("lattice predictions", 60.0, _check_lattices),
    11: ("Weyl grading", 10.0, _check_weyl),
}


def run_check(number: int) -> CheckResult:
    name, budget, fn = CHECKS[number]
    return _timed(number, name, budget, fn)


def run_all(numbers=None) -> list:
    return [run_check(n) for n in (numbers or sorted(CHECKS))]
