"""
Weights of Res GL3 over an unramified extension of degree f.

A weight is an f-tuple of integer triples (lambda_0, ..., lambda_{f-1}).  Serre weights
are p-restricted weights modulo (p - pi) X^0, where X^0 is spanned by the central
characters (1,1,1)_j and (pi x)_j = x_{j-1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .weyl import ETA, ONE, POSITIVE_ROOTS, pairing, vadd, vscale, vsub

ROOT_NAMES = ("alpha1", "alpha2", "alpha0")


class WallError(ValueError):
    """Raised when a weight lies on an affine root hyperplane."""


class NotRestrictedError(ValueError):
    """Raised when a weight is not p-restricted."""


# ---------------------------------------------------------------------------
# f-tuples of triples
# ---------------------------------------------------------------------------

def fweight(*components: Sequence[int]) -> tuple:
    return tuple(tuple(int(a) for a in c) for c in components)


def fw_const(x: Sequence[int], f: int) -> tuple:
    return tuple(tuple(x) for _ in range(f))


def fw_zero(f: int) -> tuple:
    return fw_const((0, 0, 0), f)


def fw_eta(f: int) -> tuple:
    return fw_const(ETA, f)


def fw_one(f: int) -> tuple:
    return fw_const(ONE, f)


def fw_add(x, y) -> tuple:
    return tuple(vadd(a, b) for a, b in zip(x, y))


def fw_sub(x, y) -> tuple:
    return tuple(vsub(a, b) for a, b in zip(x, y))


def fw_scale(c: int, x) -> tuple:
    return tuple(vscale(c, a) for a in x)


def fw_pi(x, k: int = 1) -> tuple:
    """Frobenius shift (pi x)_j = x_{j-k}."""
    f = len(x)
    return tuple(x[(j - k) % f] for j in range(f))


def fw_perm(s, x) -> tuple:
    """Apply an f-tuple of permutations componentwise."""
    from .weyl import perm_act

    return tuple(perm_act(sj, xj) for sj, xj in zip(s, x))


# ---------------------------------------------------------------------------
# alcoves and depth
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlcoveDescriptor:
    """Per embedding the integers n_alpha with n p < <lambda+eta, alpha^vee> < (n+1) p."""

    n: tuple  # n[j] = (n_alpha1, n_alpha2, n_alpha0)

    def is_restricted(self) -> bool:
        return all(nj[0] == 0 and nj[1] == 0 for nj in self.n)

    def letters(self) -> tuple:
        """'A'/'B' per embedding for restricted alcoves, '?' otherwise."""
        out = []
        for nj in self.n:
            if nj[0] == 0 and nj[1] == 0:
                out.append("A" if nj[2] == 0 else "B")
            else:
                out.append("?")
        return tuple(out)

    def bits(self) -> tuple:
        letters = self.letters()
        if "?" in letters:
            raise NotRestrictedError(f"alcove {self.n} is not restricted")
        return tuple(0 if c == "A" else 1 for c in letters)


def shifted_pairings(lam_j: Sequence[int]) -> tuple:
    """<lambda + eta, alpha^vee> for alpha1, alpha2, alpha0."""
    x = vadd(lam_j, ETA)
    return tuple(pairing(x, r) for r in POSITIVE_ROOTS)


def alcove_of(lam, p: int) -> AlcoveDescriptor:
    out = []
    for j, lam_j in enumerate(lam):
        nj = []
        for name, val in zip(ROOT_NAMES, shifted_pairings(lam_j)):
            if val % p == 0:
                raise WallError(f"embedding {j}: <lambda+eta, {name}^vee> = {val} lies on the wall n = {val // p}")
            nj.append(val // p)
        out.append(tuple(nj))
    return AlcoveDescriptor(tuple(out))


def depth(lam, p: int) -> int:
    """Largest n with p m + n < <lambda+eta, alpha^vee> < p(m+1) - n for all roots and embeddings."""
    best = None
    for j, lam_j in enumerate(lam):
        for name, val in zip(ROOT_NAMES, shifted_pairings(lam_j)):
            r = val % p
            if r == 0:
                raise WallError(f"embedding {j}: weight is not p-regular ({name})")
            d = min(r - 1, p - r - 1)
            best = d if best is None else min(best, d)
    return best


def is_regular(lam, p: int) -> bool:
    return all(v % p for lam_j in lam for v in shifted_pairings(lam_j))


def is_restricted(lam, p: int) -> bool:
    return all(0 <= pairing(l, (0, 1)) <= p - 1 and 0 <= pairing(l, (1, 2)) <= p - 1 for l in lam)


def depth_in_c0(lam, p: int) -> int:
    """Depth in the base alcove C0, or -1 when lambda is not in C0."""
    try:
        a = alcove_of(lam, p)
    except WallError:
        return -1
    if any(nj != (0, 0, 0) for nj in a.n):
        return -1
    return depth(lam, p)


# ---------------------------------------------------------------------------
# Serre weight normal forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SerreWeightNF:
    """Canonical representative of a p-restricted weight modulo (p - pi) X^0."""

    base: tuple  # f triples with last coordinate 0
    twist: int  # sum_j lambda_{j,3} p^j modulo p^f - 1
    p: int

    @property
    def f(self) -> int:
        return len(self.base)

    def representative(self) -> tuple:
        """A weight with this normal form: twist placed in embedding 0 as a central shift."""
        rep = [list(b) for b in self.base]
        rep[0] = [x + self.twist for x in rep[0]]
        return tuple(tuple(r) for r in rep)

    def to_json(self) -> dict:
        return {"base": [list(b) for b in self.base], "twist": self.twist, "p": self.p, "f": self.f}

    @staticmethod
    def from_json(data: dict) -> "SerreWeightNF":
        return SerreWeightNF(tuple(tuple(b) for b in data["base"]), int(data["twist"]), int(data["p"]))

    def __str__(self) -> str:
        parts = ";".join("%d,%d" % (b[0], b[1]) for b in self.base)
        return f"F[{parts}|{self.twist}]"


def serre_nf(lam, p: int) -> SerreWeightNF:
    if not is_restricted(lam, p):
        raise NotRestrictedError(f"{lam} is not {p}-restricted")
    f = len(lam)
    modulus = p ** f - 1
    base = tuple(vsub(l, vscale(l[2], ONE)) for l in lam)
    twist = sum(l[2] * p ** j for j, l in enumerate(lam)) % modulus
    return SerreWeightNF(base, twist, p)


def central_class(lam, p: int) -> int:
    f = len(lam)
    return sum(sum(l) * p ** j for j, l in enumerate(lam)) % (p ** f - 1)


def nf_central_class(nf: SerreWeightNF) -> int:
    return central_class(nf.representative(), nf.p)


def nf_depth(nf: SerreWeightNF) -> int:
    return depth(nf.representative(), nf.p)


def nf_alcove_bits(nf: SerreWeightNF) -> tuple:
    return alcove_of(nf.representative(), nf.p).bits()
