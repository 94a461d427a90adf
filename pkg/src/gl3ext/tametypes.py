"""
Tame Deligne-Lusztig types R_s(lambda) and their weight sets.

A type is stored as a pair (s, lam): an f-tuple of permutations and an f-tuple of
triples.  Jordan-Hoelder sets, predicted weights W?, intersections of the two and the
shape-to-weights recipe are all computed as sets of Serre weight normal forms, labelled
by vertices of the extension graph.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .extgraph import (
    SIGMA0,
    SIGMA0_INN,
    TABLE_PP,
    GraphVertex,
    in_region,
    lw_affine,
    lw_can,
    lw_class,
    lw_perm,
    lw_sec,
    lw_sub,
    r,
    r_pair,
    trns,
    trns_inverse,
)
from .weights import (
    SerreWeightNF,
    WallError,
    central_class,
    depth,
    fw_add,
    fw_const,
    fw_eta,
    fw_one,
    fw_perm,
    fw_sub,
    is_restricted,
    serre_nf,
    alcove_of,
)
from .weyl import (
    ALL_PERMS,
    ETA,
    ONE,
    AffElem,
    AffElem1,
    admissible_set,
    length,
    perm_act,
    perm_id,
    perm_inv,
    perm_mul,
    perm_order,
    perm_to_cycle,
    t,
    vadd,
    vscale,
    vsub,
)


class DepthError(ValueError):
    """Raised when a weight is too shallow for the requested computation."""


class GenericityWarning(UserWarning):
    """Emitted when a genericity hypothesis is violated but the computation still runs."""


def _depth_in_c0(lam, p: int) -> int:
    """Depth of lam in the base alcove, or -1 if lam is not in it."""
    try:
        a = alcove_of(lam, p)
    except WallError:
        return -1
    if any(nj != (0, 0, 0) for nj in a.n):
        return -1
    return depth(lam, p)


def check_depth(lam, p: int, need: int = 3, what: str = "weight") -> int:
    """Depth of lam - eta in C0; warn below `need`, raise when not in C0 at all."""
    d = _depth_in_c0(fw_sub(lam, fw_eta(len(lam))), p)
    if d < 0:
        raise DepthError(f"{what} {lam}: lambda - eta is not in the base alcove")
    if d < need:
        warnings.warn(f"{what} {lam} is only {d}-deep (want {need})", GenericityWarning, stacklevel=3)
    return d


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

def _perm_tuple(s) -> tuple:
    return tuple(tuple(int(a) for a in sj) for sj in s)


@dataclass(frozen=True)
class TameType:
    """The Deligne-Lusztig representation R_s(lam)."""

    s: tuple
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", _perm_tuple(self.s))
        object.__setattr__(self, "lam", tuple(tuple(int(a) for a in l) for l in self.lam))
        if len(self.s) != len(self.lam):
            raise ValueError("s and lambda have different f")

    @property
    def f(self) -> int:
        return len(self.s)

    @staticmethod
    def from_affine(x: AffElem, mu) -> "TameType":
        """R_x(mu) := R_w(mu + x(0)) with w the finite part of x."""
        zero = fw_const((0, 0, 0), x.f)
        return TameType(x.finite_part(), fw_add(mu, x.act(zero)))

    def to_json(self) -> dict:
        return {"s": [[a + 1 for a in sj] for sj in self.s], "lambda": [list(l) for l in self.lam]}

    @staticmethod
    def from_json(data: dict) -> "TameType":
        return TameType(tuple(tuple(a - 1 for a in sj) for sj in data["s"]),
                        tuple(tuple(l) for l in data["lambda"]))

    def __str__(self) -> str:
        s = ",".join(perm_to_cycle(sj) for sj in self.s)
        lam = ";".join("%d,%d,%d" % l for l in self.lam)
        return f"R[{s}]({lam})"


def _vertex_of_label(s, label: GraphVertex) -> GraphVertex:
    """(omega, a) -> (s(omega), a)."""
    return GraphVertex(tuple(lw_perm(sj, m) for sj, m in zip(s, label.omega)), label.a)


def _label_of_vertex(s, v: GraphVertex) -> GraphVertex:
    return GraphVertex(tuple(lw_perm(perm_inv(sj), m) for sj, m in zip(s, v.omega)), v.a)


def sigma_labels(f: int) -> list:
    return [GraphVertex.from_pairs(c) for c in itertools.product(SIGMA0, repeat=f)]


def jh(tau: TameType, p: int, need: int = 3) -> dict:
    """Jordan-Hoelder factors of R_s(lam), keyed by their Sigma-label (omega, a).

    With center lam, the factor with label (omega, a) is F(Trns_lam(s(omega), a)).
    """
    check_depth(tau.lam, p, need, "type")
    out = {}
    for lab in sigma_labels(tau.f):
        out[lab] = trns(tau.lam, _vertex_of_label(tau.s, lab), p)
    return out


def jh_set(tau: TameType, p: int) -> frozenset:
    return frozenset(jh(tau, p).values())


# ---------------------------------------------------------------------------
# Galois side
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RhoData:
    """A tame inertial representation through its type: V(rho|_I) = R_s(lam)."""

    s: tuple
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", _perm_tuple(self.s))
        object.__setattr__(self, "lam", tuple(tuple(int(a) for a in l) for l in self.lam))

    @property
    def f(self) -> int:
        return len(self.s)

    @property
    def niveau(self) -> int:
        m = perm_id()
        for sj in self.s:
            m = perm_mul(m, sj)
        return perm_order(m)

    @staticmethod
    def from_type(tau: TameType) -> "RhoData":
        return RhoData(tau.s, tau.lam)

    def as_type(self) -> TameType:
        return TameType(self.s, self.lam)

    def to_json(self) -> dict:
        return {"s": [[a + 1 for a in sj] for sj in self.s], "lambda": [list(l) for l in self.lam]}

    @staticmethod
    def from_json(data: dict) -> "RhoData":
        return RhoData(tuple(tuple(a - 1 for a in sj) for sj in data["s"]),
                       tuple(tuple(l) for l in data["lambda"]))


def _digits(n: int, p: int, f: int) -> list:
    out = []
    for _ in range(f):
        out.append(n % p)
        n //= p
    return out


def rho_from_exponents(niveau: int, exps: Sequence[int], p: int, f: int) -> RhoData:
    """RhoData from the inertial exponents of a tame representation.

    niveau 1: rho|_I = omega_f^{x1} + omega_f^{x2} + omega_f^{x3}, with exps = (x1, x2, x3)
    and each x in [0, p^f - 1).  niveau 2: exps = (x1, x2, x3) with omega_{2f}^{x1 + p^f x2}
    and its conjugate, plus omega_f^{x3}.  niveau 3: omega_{3f}^{x1 + p^f x2 + p^{2f} x3}
    and its conjugates.  The digits of x in base p give lambda_j.
    """
    s0 = {1: (0, 1, 2), 2: (1, 0, 2), 3: (1, 2, 0)}.get(niveau)
    if s0 is None or len(exps) != 3:
        raise ValueError("niveau must be 1, 2 or 3 with three exponents")
    digs = [_digits(int(x), p, f) for x in exps]
    lam = tuple(tuple(digs[k][j] for k in range(3)) for j in range(f))
    s = (s0,) + tuple(perm_id() for _ in range(f - 1))
    return RhoData(s, lam)


def w_question(rho: RhoData, p: int, need: int = 3) -> dict:
    """Predicted weights of rho, keyed by r(label): F(Trns_{lam-1}(s r(Sigma)))."""
    center = fw_sub(rho.lam, fw_one(rho.f))
    check_depth(center, p, need, "rho")
    out = {}
    for lab in sigma_labels(rho.f):
        rl = r(lab)
        out[rl] = trns(center, _vertex_of_label(rho.s, rl), p)
    return out


def w_question_set(rho: RhoData, p: int) -> frozenset:
    return frozenset(w_question(rho, p).values())


def obvious_weights(rho: RhoData, p: int, need: int = 3) -> dict:
    """Obvious weights, keyed by the choice of one element of W~_1^{+,der} per embedding.

    For embedding i the chosen row gives (w_i, omega_{i+1}) and the weight is
    w_i(lam_i + s_i(sec omega_i) - 1 - p sec omega_{i+1}) - eta.
    """
    f = rho.f
    check_depth(rho.lam, p, need, "rho")
    rows = list(TABLE_PP.items())
    out = {}
    for choice in itertools.product(range(len(rows)), repeat=f):
        w = [rows[choice[i]][1][1] for i in range(f)]
        om_next = [rows[choice[i]][1][0] for i in range(f)]  # omega_{i+1}
        omega = [om_next[(i - 1) % f] for i in range(f)]  # omega_i
        lam = []
        for i in range(f):
            x = vadd(rho.lam[i], perm_act(rho.s[i], lw_sec(omega[i])))
            x = vsub(x, ONE)
            x = vsub(x, vscale(p, lw_sec(om_next[i])))
            lam.append(vsub(perm_act(w[i], x), ETA))
        key = tuple(rows[c][0] for c in choice)
        out[key] = serre_nf(tuple(lam), p)
    return out


# ---------------------------------------------------------------------------
# intersections
# ---------------------------------------------------------------------------

ADM_PLUS_ETA = None


def adm_plus_eta() -> frozenset:
    global ADM_PLUS_ETA
    if ADM_PLUS_ETA is None:
        ADM_PLUS_ETA = admissible_set(ETA, +1)
    return ADM_PLUS_ETA


def sigma_w_combinatorial(x: AffElem1) -> frozenset:
    """Sigma_0 intersected with x(r(Sigma_0)), read off the labels alone."""
    moved = {(lw_affine(x, m), b) for (m, b) in (r_pair(q) for q in SIGMA0)}
    return frozenset(q for q in SIGMA0 if q in moved)


def _embed(x: AffElem1, j: int, f: int) -> AffElem:
    comps = [AffElem1()] * f
    comps[j] = x
    return AffElem(tuple(comps))


def intersection_labels(s, mu, x: AffElem, p: int) -> frozenset:
    """Labels (omega, a) of JH(R_s(mu)) whose weight also lies in W? of R_{s x}(mu + 1).

    Both sides are computed independently as normal forms and intersected.
    """
    f = x.f
    s = _perm_tuple(s)
    mu = tuple(tuple(m) for m in mu)
    lhs = jh(TameType(s, mu), p)
    sx = AffElem(tuple(AffElem1(sj, (0, 0, 0)) * xj for sj, xj in zip(s, x.components)))
    other = TameType.from_affine(sx, fw_add(mu, fw_one(f)))
    rhs = w_question_set(RhoData(other.s, other.lam), p)
    return frozenset(lab for lab, sw in lhs.items() if sw in rhs)


def intersect_types(s, mu, x: AffElem, p: int) -> tuple:
    """Per-embedding subsets Sigma_{x_j} of Sigma_0.

    Embedding j is isolated by replacing every other component of x by the identity and
    projecting the intersection onto embedding j.
    """
    f = x.f
    out = []
    for j in range(f):
        labs = intersection_labels(s, mu, _embed(x.components[j], j, f), p)
        out.append(frozenset(lab.component(j) for lab in labs))
    return tuple(out)


def intersection_weights(s, mu, x: AffElem, p: int) -> frozenset:
    """JH(R_s(mu)) meets W?(R_{sx}(mu+1)) as a set of normal forms."""
    lhs = jh(TameType(s, mu), p)
    labs = intersection_labels(s, mu, x, p)
    return frozenset(lhs[lab] for lab in labs)


# ---------------------------------------------------------------------------
# a length zero element rotating the simple reflections
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def rotation() -> AffElem1:
    """The length zero element rho with rho alpha rho^-1 = beta, rho beta rho^-1 = gamma+."""
    from .weyl import ALPHA, BETA, GAMMA_PLUS

    for w in ALL_PERMS:
        for nu in ((1, 0, 0), (0, 0, -1), (0, 1, 0), (-1, 0, 0), (0, 0, 1), (0, -1, 0)):
            x = AffElem1(w, nu)
            xi = x.inverse()
            if x * ALPHA * xi == BETA and x * BETA * xi == GAMMA_PLUS and x * GAMMA_PLUS * xi == ALPHA:
                return x
    raise RuntimeError("no rotation found")  # pragma: no cover


def rotate_pairs(pairs: Iterable, k: int = 1) -> frozenset:
    x = rotation() ** k
    return frozenset((lw_affine(x, m), b) for (m, b) in pairs)


# ---------------------------------------------------------------------------
# shapes and weights
# ---------------------------------------------------------------------------

def normalize_shape_component(x: AffElem1) -> AffElem1:
    """Strip the central translation so that elements of Adm(2,1,0) land in Adm(eta)."""
    c = sum(x.nu)
    if c % 3:
        raise ValueError(f"{x} has no central normalization")
    return x * t((-c // 3,) * 3)


def orientation(mu, strict: bool = True) -> tuple:
    """Permutations s_j with s*(mu)_j = s_{f-1-j}^{-1}(mu_j) strictly dominant."""
    f = len(mu)
    s = [None] * f
    for j, mj in enumerate(mu):
        found = None
        for u in ALL_PERMS:
            y = perm_act(u, mj)
            if y[0] > y[1] > y[2]:
                found = u
                break
        if found is None:
            raise ValueError(f"mu_{j} = {mj} has repeated entries; orientation is ambiguous")
        s[f - 1 - j] = perm_inv(found)
    return tuple(s)


def s_star(s) -> tuple:
    f = len(s)
    return tuple(perm_inv(s[f - 1 - j]) for j in range(f))


def s_tau_mu(s, s_tau) -> tuple:
    """s_{tau,mu} = pi^{-1}(s^{-1}) (1,...,1,s_tau^{-1}) s, componentwise."""
    f = len(s)
    out = []
    for j in range(f):
        mid = perm_inv(s_tau) if j == f - 1 else perm_id()
        out.append(perm_mul(perm_inv(s[(j + 1) % f]), perm_mul(mid, s[j])))
    return tuple(out)


@dataclass(frozen=True)
class TypeData:
    """A tame inertial type tau(s_tau, -mu) with mu an f-tuple of digit triples."""

    s_tau: tuple
    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "s_tau", tuple(int(a) for a in self.s_tau))
        object.__setattr__(self, "mu", tuple(tuple(int(a) for a in m) for m in self.mu))

    @property
    def f(self) -> int:
        return len(self.mu)

    def orientation(self) -> tuple:
        return orientation(self.mu)

    def s_star_mu(self) -> tuple:
        s = self.orientation()
        return fw_perm(s_star(s), self.mu)

    def s_tau_mu(self) -> tuple:
        return s_tau_mu(self.orientation(), self.s_tau)

    def as_type(self) -> TameType:
        """R_{s*_{tau,mu}}(s*(mu))."""
        return TameType(s_star(self.s_tau_mu()), self.s_star_mu())


def shape_weights(shape: AffElem, tau: TypeData, p: int) -> dict:
    """W?(rho, tau) for rho semisimple of the given shape relative to tau.

    shape is taken in Adm^-(eta) or Adm^-(2,1,0); its adjoint lands in Adm^+ and each
    component j contributes Sigma_{shape*_j}.  Labels are pushed through
    sigma^{(s*_{tau,mu}, s*(mu))}.
    """
    f = tau.f
    star = shape.star()
    comps = [normalize_shape_component(c) for c in star.components]
    adm = adm_plus_eta()
    for j, c in enumerate(comps):
        if c not in adm:
            raise ValueError(f"shape component {j} ({c}) is not admissible")
    sets = [sorted(sigma_w_combinatorial(c)) for c in comps]
    center = tau.s_star_mu()
    sst = s_star(tau.s_tau_mu())
    out = {}
    for pairs in itertools.product(*sets):
        lab = GraphVertex.from_pairs(pairs)
        out[lab] = trns(center, _vertex_of_label(sst, lab), p)
    return out


def shape_lengths(shape: AffElem) -> tuple:
    return tuple(length(normalize_shape_component(c), +1) for c in shape.star().components)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _lower_alcove_rep(lam_j, p: int) -> tuple:
    """Reflect an upper alcove weight into the lower one (same W_a orbit)."""
    x = vadd(lam_j, ETA)
    val = x[0] - x[2]
    if val < p:
        return tuple(lam_j)
    return vsub(lam_j, vscale(val - p, (1, 0, -1)))


def _containing_element(label_pair) -> list:
    """Candidate W_a elements y (one embedding) with (omega, a) in y(Sigma_0), small first."""
    m, b = label_pair
    out = []
    for q in SIGMA0:
        if q[1] != b:
            continue
        for w in ALL_PERMS:
            # need w(q + nu) = m, i.e. nu = w^{-1}(m) - q in the root lattice
            diff = lw_sub(lw_perm(perm_inv(w), m), q[0])
            if lw_class(diff) != 0:
                continue
            out.append(AffElem1(w, lw_can(diff)))
    out = sorted(set(out), key=lambda y: (length(y, +1), y))
    return out


def eliminate(sw: SerreWeightNF, rho: RhoData, p: int) -> TameType:
    """A type whose JH set contains sw and misses W?(rho) entirely."""
    f = rho.f
    wq = w_question_set(rho, p)
    if sw in wq:
        raise ValueError(f"{sw} is a predicted weight of rho")
    mu = fw_sub(rho.lam, fw_one(f))
    lam_sw = sw.representative()
    if central_class(lam_sw, p) != central_class(fw_sub(mu, fw_eta(f)), p):
        center = tuple(vadd(_lower_alcove_rep(l, p), ETA) for l in lam_sw)
        s = tuple(perm_id() for _ in range(f))
        require_disjoint = False
    else:
        center, s = mu, rho.s
        require_disjoint = True
    v = trns_inverse(center, sw, p)
    lab = _label_of_vertex(s, v)
    per = [_containing_element(lab.component(j)) for j in range(f)]
    adm = adm_plus_eta()
    # try elements failing admissibility in as few embeddings as possible first
    for combo in itertools.product(*per):
        if require_disjoint and all(y in adm for y in combo):
            continue
        x = AffElem(tuple(AffElem1(sj, (0, 0, 0)) * y for sj, y in zip(s, combo)))
        cand = TameType.from_affine(x, center)
        if _depth_in_c0(fw_sub(cand.lam, fw_eta(f)), p) < 0:
            continue
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", GenericityWarning)
                js = jh_set(cand, p)
        except (ValueError, DepthError):
            continue
        if sw in js and not (js & wq):
            return cand
    raise RuntimeError(f"no eliminating type found for {sw}")


# ---------------------------------------------------------------------------
# misc
# ---------------------------------------------------------------------------

def defect_of(tau: TameType, sw: SerreWeightNF, p: int) -> int:
    for lab, x in jh(tau, p).items():
        if x == sw:
            return sum(1 for q in lab.pairs() if q in set(SIGMA0_INN))
    raise ValueError(f"{sw} is not a constituent of {tau}")


def random_deep_weight(rng, f: int, p: int, need: int = 3) -> tuple:
    """A random lam with lam - eta need-deep in C0."""
    lo = need + 1
    out = []
    for _ in range(f):
        while True:
            a = rng.randint(lo, p - 2 * lo)
            b = rng.randint(lo, p - lo - a)
            c3 = rng.randint(0, p - 1)
            x = (a + b + c3, b + c3, c3)
            lam_j = vadd(x, ETA)
            if _depth_in_c0(((x),), p) >= need:
                out.append(lam_j)
                break
    return tuple(out)


def random_type_data(rng, f: int, p: int, need: int = 3, s_tau=None) -> TypeData:
    """A random TypeData whose center s*(mu) is need-deep."""
    while True:
        mu = []
        for _ in range(f):
            x = sorted(rng.sample(range(p), 3), reverse=True)
            mu.append(tuple(rng.sample(x, 3)))
        st = s_tau if s_tau is not None else rng.choice(ALL_PERMS)
        td = TypeData(st, tuple(mu))
        if _depth_in_c0(fw_sub(td.s_star_mu(), fw_eta(f)), p) >= need:
            return td
