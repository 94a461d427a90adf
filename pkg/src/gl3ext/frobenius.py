"""
Monomial Frobenius matrices of semisimple Kisin modules and the inertial types they carry.

A monomial matrix M is stored column by column: M e_m = c_m v^{x_m} e_{sigma(m)}, where
c_m is a formal unit (a product of named symbols) that never influences exponents.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .tametypes import TameType, TypeData, s_star
from .weyl import (
    AffElem,
    AffElem1,
    perm_act,
    perm_id,
    perm_inv,
    perm_mul,
    perm_order,
    vadd,
)


def _tag_mul(a: tuple, b: tuple) -> tuple:
    d = dict(a)
    for k, v in b:
        d[k] = d.get(k, 0) + v
    return tuple(sorted((k, v) for k, v in d.items() if v))


def _tag_pow(a: tuple, n: int) -> tuple:
    return tuple((k, v * n) for k, v in a)


@dataclass(frozen=True)
class MonoMat:
    """A 3x3 monomial matrix over F((v)) with symbolic unit coefficients."""

    sigma: tuple  # column m has its entry in row sigma[m]
    exps: tuple  # v-exponent of that entry
    tags: tuple = field(default=((), (), ()))  # formal unit per column

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(a) for a in self.sigma))
        object.__setattr__(self, "exps", tuple(int(a) for a in self.exps))
        object.__setattr__(self, "tags", tuple(tuple(t) for t in self.tags))
        if sorted(self.sigma) != [0, 1, 2]:
            raise ValueError("not a monomial matrix")

    @staticmethod
    def from_elem(x: AffElem1) -> "MonoMat":
        return MonoMat(x.w, x.nu)

    @staticmethod
    def diagonal_units(names: Sequence[str]) -> "MonoMat":
        return MonoMat((0, 1, 2), (0, 0, 0), tuple(((n, 1),) for n in names))

    @staticmethod
    def from_grid(grid) -> "MonoMat":
        """From rows of entries (None or v-exponent); rejects non-monomial grids."""
        sigma = [None] * 3
        exps = [0] * 3
        for k in range(3):
            for m in range(3):
                if grid[k][m] is not None:
                    if sigma[m] is not None:
                        raise ValueError("column with two nonzero entries")
                    sigma[m] = k
                    exps[m] = grid[k][m]
        if None in sigma or sorted(sigma) != [0, 1, 2]:
            raise ValueError("not a monomial matrix")
        return MonoMat(tuple(sigma), tuple(exps))

    def __mul__(self, other: "MonoMat") -> "MonoMat":
        sigma, exps, tags = [], [], []
        for m in range(3):
            k = other.sigma[m]
            sigma.append(self.sigma[k])
            exps.append(other.exps[m] + self.exps[k])
            tags.append(_tag_mul(other.tags[m], self.tags[k]))
        return MonoMat(tuple(sigma), tuple(exps), tuple(tags))

    def frobenius(self, j: int, p: int) -> "MonoMat":
        """phi^j: v -> v^{p^j} on exponents and c -> c^{p^j} on units."""
        q = p ** j
        return MonoMat(self.sigma, tuple(q * e for e in self.exps),
                       tuple(_tag_pow(t, q) for t in self.tags))

    def to_elem(self) -> AffElem1:
        return AffElem1(self.sigma, self.exps)

    def grid(self) -> list:
        rows = [[None] * 3 for _ in range(3)]
        for m in range(3):
            rows[self.sigma[m]][m] = (self.tags[m], self.exps[m])
        return rows

    def render(self) -> str:
        lines = []
        for row in self.grid():
            cells = []
            for ent in row:
                if ent is None:
                    cells.append("0")
                else:
                    tag, e = ent
                    unit = "*".join(k if v == 1 else f"{k}^{v}" for k, v in tag) or "1"
                    cells.append(f"{unit}·v^{e}")
            lines.append("  ".join(f"{c:>14}" for c in cells))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"sigma": [a + 1 for a in self.sigma], "exps": list(self.exps),
                "tags": [[list(x) for x in t] for t in self.tags]}


def diag(x: Sequence[int]) -> MonoMat:
    return MonoMat((0, 1, 2), tuple(x))


def perm_mat(s) -> MonoMat:
    return MonoMat(tuple(s), (0, 0, 0))


# ---------------------------------------------------------------------------
# partial Frobenius matrices
# ---------------------------------------------------------------------------

def phi_matrices(shape: AffElem, tau: TypeData, units: bool = False) -> list:
    """B^{(j)} = shape_j * s_{tau,mu,j} * v^{s_j^{-1}(mu_{f-1-j})} for j = 0..f-1."""
    f = tau.f
    if shape.f != f:
        raise ValueError("shape and type have different f")
    s = tau.orientation()
    stm = tau.s_tau_mu()
    out = []
    for j in range(f):
        b = MonoMat.from_elem(shape.components[j]) * perm_mat(stm[j])
        b = b * diag(perm_act(perm_inv(s[j]), tau.mu[f - 1 - j]))
        if units and j == f - 1:
            b = MonoMat.diagonal_units(("u1", "u2", "u3")) * b
        out.append(b)
    return out


def compose_phi_f(mats: Sequence[MonoMat], p: int) -> MonoMat:
    """phi^f = phi^0(B^{(f-1)}) phi^1(B^{(f-2)}) ... phi^{f-1}(B^{(0)})."""
    f = len(mats)
    out = MonoMat((0, 1, 2), (0, 0, 0))
    for j in range(f):
        out = out * mats[f - 1 - j].frobenius(j, p)
    return out


# ---------------------------------------------------------------------------
# inertial characters
# ---------------------------------------------------------------------------

def _cycles(sigma) -> list:
    seen, out = set(), []
    for i in range(3):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        k = sigma[i]
        while k != i:
            cyc.append(k)
            seen.add(k)
            k = sigma[k]
        out.append(cyc)
    return out


def cycle_exponents(m: MonoMat, p: int, f: int) -> list:
    """(k, E) per cycle of sigma: phi^{fk} e_i = v^{E} e_i with E mod p^{kf} - 1, i = cycle start."""
    out = []
    for cyc in _cycles(m.sigma):
        k = len(cyc)
        i = cyc[0]
        total, idx = 0, i
        for step in range(k):
            total += p ** (f * (k - 1 - step)) * m.exps[idx]
            idx = m.sigma[idx]
        out.append((k, cyc, total % (p ** (k * f) - 1)))
    return out


def character_invariant(m: MonoMat, p: int, f: int) -> tuple:
    """Sorted inertial exponents, all written at niveau 6f."""
    big = p ** (6 * f) - 1
    out = []
    for k, cyc, e in cycle_exponents(m, p, f):
        lift = big // (p ** (k * f) - 1)
        for step in range(k):
            out.append((e * p ** (f * step) * lift) % big)
    return tuple(sorted(out))


def type_phi_f(tau: TameType, p: int) -> MonoMat:
    """prod_j w_j^{-1} v^{p^j lam_j}: the phi^f of the module attached to R_w(lam)."""
    out = MonoMat((0, 1, 2), (0, 0, 0))
    for j in range(tau.f):
        out = out * perm_mat(perm_inv(tau.s[j])) * diag(tuple(p ** j * a for a in tau.lam[j]))
    return out


def type_invariant(tau: TameType, p: int) -> tuple:
    return character_invariant(type_phi_f(tau, p), p, tau.f)


def types_equivalent(t1: TameType, t2: TameType, p: int) -> bool:
    if t1.f != t2.f:
        return False
    return type_invariant(t1, p) == type_invariant(t2, p)


def herzig_twist(tau: TameType, s) -> TameType:
    """R_w(lam) -> R_{s w pi(s)^{-1}}(s lam), an isomorphic presentation."""
    f = tau.f
    w = tuple(perm_mul(s[j], perm_mul(tau.s[j], perm_inv(s[(j - 1) % f]))) for j in range(f))
    lam = tuple(perm_act(s[j], tau.lam[j]) for j in range(f))
    return TameType(w, lam)


def herzig_characters(s0, lam, p: int) -> tuple:
    """Inertial exponents of V^{-1}(R_{(s0,1,...,1)}(lam)) by the explicit niveau recipe.

    Only s0 in {id, (12), (123)} are covered; exponents are returned at niveau 6f.
    """
    f = len(lam)
    mu = [sum(p ** j * lam[j][i] for j in range(f)) for i in range(3)]
    q = p ** f
    big = p ** (6 * f) - 1
    s0 = tuple(s0)
    if s0 == (0, 1, 2):
        raw = [(1, x) for x in mu]
    elif s0 == (1, 0, 2):
        raw = [(2, mu[0] + q * mu[1]), (2, mu[1] + q * mu[0]), (1, mu[2])]
    elif s0 == (1, 2, 0):
        a, b, c = mu
        raw = [(3, a + q * b + q * q * c), (3, b + q * c + q * q * a), (3, c + q * a + q * q * b)]
    else:
        raise ValueError("recipe covers s0 = id, (12), (123) only")
    return tuple(sorted((e * (big // (p ** (k * f) - 1))) % big for k, e in raw))


def _base_digits(n: int, base: int, count: int) -> list:
    out = []
    for _ in range(count):
        out.append(n % base)
        n //= base
    return out


@dataclass(frozen=True)
class InertialResult:
    tau: TameType
    niveau: int
    ambiguous: bool  # some cycle exponent is 0, so digits 0 and p-1 both fit


def inertial_type_of(m: MonoMat, p: int, f: int) -> InertialResult:
    """Recover R_{(s0,1,...,1)}(lam) from phi^f = D s0^{-1} v^x.

    Per cycle the exponent E in [0, p^{kf} - 1) is split into base p^f digits, one per
    basis vector of the cycle, and each of those into base p digits lam_j.
    """
    s0 = perm_inv(m.sigma)
    xprime = [None] * 3
    ambiguous = False
    q = p ** f
    for k, cyc, e in cycle_exponents(m, p, f):
        if e == 0:
            ambiguous = True
        digs = _base_digits(e, q, k)  # digs[d] multiplies q^d
        idx = cyc[0]
        for step in range(k):
            xprime[idx] = digs[k - 1 - step]
            idx = m.sigma[idx]
    lam = tuple(tuple(_base_digits(xprime[i], p, f)[j] for i in range(3)) for j in range(f))
    s = (s0,) + tuple(perm_id() for _ in range(f - 1))
    return InertialResult(TameType(s, lam), perm_order(s0), ambiguous)


# ---------------------------------------------------------------------------
# the two sides of the shape-to-type correspondence
# ---------------------------------------------------------------------------

def reflected_type(shape: AffElem, tau: TypeData) -> TameType:
    """R_{s*_{tau,mu} shape*}(s*(mu))."""
    sst = s_star(tau.s_tau_mu())
    x = AffElem(tuple(AffElem1(a, (0, 0, 0)) for a in sst)) * shape.star()
    return TameType.from_affine(x, tau.s_star_mu())


def round_trip(shape: AffElem, tau: TypeData, p: int) -> dict:
    mats = phi_matrices(shape, tau)
    phif = compose_phi_f(mats, p)
    got = inertial_type_of(phif, p, tau.f)
    want = reflected_type(shape, tau)
    return {
        "matrices": mats,
        "phi_f": phif,
        "recovered": got,
        "expected": want,
        "ok": types_equivalent(got.tau, want, p),
    }


def type_characters(tau: TypeData, p: int) -> tuple:
    """Exponents of tau(s_tau, -mu) = sum_i omega_{f'}^{-sum_k a^{(0)}_{s_tau^k(i)} p^{fk}}, at niveau 6f."""
    f = tau.f
    r = perm_order(tau.s_tau)
    a0 = [sum(tau.mu[j][i] * p ** j for j in range(f)) for i in range(3)]
    big = p ** (6 * f) - 1
    mod = p ** (r * f) - 1
    out = []
    for i in range(3):
        idx, e = i, 0
        for k in range(r):
            e += a0[idx] * p ** (f * k)
            idx = tau.s_tau[idx]
        out.append(((-e) % mod) * (big // mod) % big)
    return tuple(sorted(out))


def negate_invariant(inv: tuple, p: int, f: int) -> tuple:
    big = p ** (6 * f) - 1
    return tuple(sorted((-e) % big for e in inv))
