"""
Polynomial ideals over prime fields.

Polynomials are sparse dicts mapping exponent tuples to residues mod p.  The Groebner
engine is a plain Buchberger loop (normal selection strategy, product and chain
criteria) producing reduced bases.  On top of it sit sums, intersections, colon ideals
and membership both in the polynomial ring and in its localization at the origin.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class RingMismatchError(ValueError):
    """Raised when combining ideals of different rings."""


class ParseError(ValueError):
    """Raised on malformed polynomial literals."""


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _grevlex_key(e: tuple) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def _elim_key(e: tuple) -> tuple:
    # block order: the first variable dominates, grevlex on the rest
    return (e[0],) + _grevlex_key(e[1:])


ORDERS = {"grevlex": _grevlex_key, "elim": _elim_key}


# ---------------------------------------------------------------------------
# rings and polynomials
# ---------------------------------------------------------------------------

class PolyRing:
    """F_p[x_1, ..., x_n] with a fixed monomial order.

    `aliases` maps extra identifiers to polynomials in the ring; the parser expands
    them, which is how derived coordinates such as a tilde variable are written.
    """

    def __init__(self, p: int, names: Sequence[str], order: str = "grevlex", aliases: dict | None = None):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.p = p
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.order = order
        self.key = ORDERS[order]
        self.index = {n: i for i, n in enumerate(self.names)}
        self.aliases: dict = {}
        for name, text in (aliases or {}).items():
            self.aliases[name] = self.parse(text)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and (self.p, self.names, self.order) == (other.p, other.names, other.order)

    def __hash__(self) -> int:
        return hash((self.p, self.names, self.order))

    def __repr__(self) -> str:
        return f"PolyRing(p={self.p}, vars={','.join(self.names)}, order={self.order})"

    # construction helpers -------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def const(self, c: int) -> "Poly":
        c %= self.p
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Poly":
        if name in self.aliases:
            return self.aliases[name]
        if name not in self.index:
            raise ParseError(f"unknown variable {name!r}")
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(n) for n in self.names]

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    def __call__(self, obj) -> "Poly":
        if isinstance(obj, Poly):
            if obj.ring != self:
                raise RingMismatchError("polynomial from another ring")
            return obj
        if isinstance(obj, int):
            return self.const(obj)
        if isinstance(obj, str):
            return self.parse(obj)
        raise TypeError(f"cannot coerce {obj!r}")


class Poly:
    """Immutable sparse polynomial bound to a PolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: c % ring.p for e, c in terms.items() if c % ring.p}

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, _add(self.terms, other.terms, 1, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, _add(self.terms, other.terms, -1, self.ring.p))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, _mul(self.terms, other.terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.ring.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def lead(self) -> tuple:
        return max(self.terms, key=self.ring.key)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * pow(x, k, p) % p
            total += t
        return total % p

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = pow(self.terms[self.lead()], -1, self.ring.p)
        return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})

    def __str__(self) -> str:
        return format_poly(self.ring, self.terms)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _add(f: dict, g: dict, sign: int, p: int) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = (out.get(e, 0) + sign * c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = _mono_mul(e1, e2)
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def _signed_residue(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def format_poly(ring: PolyRing, terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, key=ring.key, reverse=True):
        c = _signed_residue(terms[e], ring.p)
        mono = "*".join(
            ring.names[i] if k == 1 else f"{ring.names[i]}^{k}" for i, k in enumerate(e) if k
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# parser: integers, identifiers, + - * ^ and parentheses
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list:
        out = []
        i = 0
        stripped = text.rstrip()
        while i < len(stripped):
            m = _TOKEN.match(stripped, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character at {i} in {text!r}")
            if m.group(1):
                out.append(("int", int(m.group(1))))
            elif m.group(2):
                out.append(("name", m.group(2)))
            else:
                op = m.group(3)
                out.append(("op", "^" if op == "**" else op))
            i = m.end()
        return out

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty expression")
        out = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def _expr(self) -> Poly:
        kind, val = self._peek()
        sign = 1
        if kind == "op" and val in "+-":
            self._take()
            sign = -1 if val == "-" else 1
        out = self._term() * sign
        while True:
            kind, val = self._peek()
            if kind == "op" and val in "+-":
                self._take()
                rhs = self._term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    def _term(self) -> Poly:
        out = self._power()
        while True:
            kind, val = self._peek()
            if kind == "op" and val == "*":
                self._take()
                out = out * self._power()
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                out = out * self._power()  # implicit product, e.g. "2c11"
            else:
                return out

    def _power(self) -> Poly:
        base = self._atom()
        kind, val = self._peek()
        if kind == "op" and val == "^":
            self._take()
            kind, k = self._take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer")
            return base ** k
        return base

    def _atom(self) -> Poly:
        kind, val = self._take()
        if kind == "int":
            return self.ring.const(val)
        if kind == "name":
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self._expr()
            if self._take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if kind == "op" and val == "-":
            return -self._atom()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


# ---------------------------------------------------------------------------
# Groebner engine on raw term dicts
# ---------------------------------------------------------------------------

def _lead(f: dict, key) -> tuple:
    return max(f, key=key)


def _make_monic(f: dict, lm: tuple, p: int) -> dict:
    inv = pow(f[lm], -1, p)
    return {e: c * inv % p for e, c in f.items()}


def _sub_multiple(f: dict, g: dict, c: int, shift: tuple, p: int) -> None:
    """In place: f -= c * x^shift * g."""
    for e, d in g.items():
        m = _mono_mul(e, shift)
        v = (f.get(m, 0) - c * d) % p
        if v:
            f[m] = v
        else:
            f.pop(m, None)


def _normal_form(f: dict, basis: list, key, p: int) -> dict:
    """Full reduction of f by a list of (leading monomial, monic poly)."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = _lead(f, key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                _sub_multiple(f, g, c, _mono_div(m, lm), p)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _s_poly(f: dict, lf: tuple, g: dict, lg: tuple, p: int) -> dict:
    # f, g monic
    l = _lcm(lf, lg)
    out: dict = {}
    _sub_multiple(out, f, -1, _mono_div(l, lf), p)
    _sub_multiple(out, g, 1, _mono_div(l, lg), p)
    return out


def _buchberger(gens: Iterable[dict], key, p: int) -> list:
    basis: list = []
    for f in gens:
        if f:
            r = _normal_form(f, basis, key, p)
            if r:
                lm = _lead(r, key)
                basis.append((lm, _make_monic(r, lm, p)))
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    done: set = set()

    def lcm_of(pair):
        return _lcm(basis[pair[0]][0], basis[pair[1]][0])

    while pairs:
        # normal strategy: smallest lcm first
        pair = min(pairs, key=lambda q: (key(lcm_of(q)), q))
        pairs.discard(pair)
        done.add(pair)
        i, j = pair
        li, fi = basis[i]
        lj, fj = basis[j]
        l = _lcm(li, lj)
        if _mono_mul(li, lj) == l:
            continue  # coprime leading monomials
        if _chain_criterion(i, j, l, basis, pairs):
            continue
        r = _normal_form(_s_poly(fi, li, fj, lj, p), basis, key, p)
        if r:
            lm = _lead(r, key)
            basis.append((lm, _make_monic(r, lm, p)))
            k = len(basis) - 1
            pairs.update((a, k) for a in range(k))
    return _reduce_basis(basis, key, p)


def _chain_criterion(i: int, j: int, l: tuple, basis: list, pending: set) -> bool:
    for k, (lk, _) in enumerate(basis):
        if k in (i, j) or not _divides(lk, l):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _reduce_basis(basis: list, key, p: int) -> list:
    # keep minimal leading monomials, then interreduce tails
    leads = [lm for lm, _ in basis]
    keep = []
    for idx, (lm, g) in enumerate(basis):
        redundant = False
        for jdx, other in enumerate(leads):
            if jdx == idx or not _divides(other, lm):
                continue
            if other != lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append((lm, g))
    out = []
    for idx, (lm, g) in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        tail = dict(g)
        del tail[lm]
        tail = _normal_form(tail, others, key, p)
        tail[lm] = 1
        out.append((lm, tail))
    out.sort(key=lambda t: key(t[0]))
    return out


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class IdealHandle:
    """A finitely generated ideal with a lazily computed reduced Groebner basis."""

    def __init__(self, ring: PolyRing, gens: Iterable):
        self.ring = ring
        self.gens = tuple(g for g in (ring(x) for x in gens) if not g.is_zero())
        self._basis: list | None = None

    def _raw_basis(self) -> list:
        if self._basis is None:
            self._basis = _buchberger((g.terms for g in self.gens), self.ring.key, self.ring.p)
        return self._basis

    def groebner(self) -> list:
        return [Poly(self.ring, g) for _, g in self._raw_basis()]

    def reduce(self, f) -> Poly:
        f = self.ring(f)
        return Poly(self.ring, _normal_form(f.terms, self._raw_basis(), self.ring.key, self.ring.p))

    def contains(self, f) -> bool:
        return self.reduce(f).is_zero()

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "IdealHandle") -> bool:
        _same_ring(self, other)
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return any(g.terms and all(sum(e) == 0 for e in g.terms) for g in self.groebner())

    def is_groebner_checked(self) -> bool:
        return is_groebner(self.ring, self.groebner())

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_sum(self, other)

    def __and__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_intersect(self, other)

    def __repr__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "p": self.ring.p,
            "gens": [str(g) for g in self.gens],
            "groebner": [str(g) for g in self.groebner()],
        }


def _same_ring(*ideals: IdealHandle) -> None:
    r = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != r:
            raise RingMismatchError(f"{I.ring!r} differs from {r!r}")


def ideal(ring: PolyRing, *gens) -> IdealHandle:
    return IdealHandle(ring, gens)


def groebner(I: IdealHandle) -> list:
    return I.groebner()


def normal_form(f: Poly, G: Sequence[Poly]) -> Poly:
    ring = f.ring
    basis = []
    for g in G:
        if g:
            lm = g.lead()
            basis.append((lm, _make_monic(g.terms, lm, ring.p)))
    return Poly(ring, _normal_form(f.terms, basis, ring.key, ring.p))


def s_polynomial(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    lf, lg = f.lead(), g.lead()
    return Poly(ring, _s_poly(f.monic().terms, lf, g.monic().terms, lg, ring.p))


def is_groebner(ring: PolyRing, G: Sequence[Poly]) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not normal_form(s_polynomial(G[i], G[j]), G).is_zero():
                return False
    return True


def ideal_sum(*ideals: IdealHandle) -> IdealHandle:
    _same_ring(*ideals)
    return IdealHandle(ideals[0].ring, [g for I in ideals for g in I.gens])


def _elimination_ring(ring: PolyRing) -> PolyRing:
    return PolyRing(ring.p, ("_t",) + ring.names, order="elim")


def ideal_intersect(*ideals: IdealHandle) -> IdealHandle:
    """Intersection via t*I + (1-t)*J, eliminating t; folded over several ideals."""
    _same_ring(*ideals)
    ring = ideals[0].ring
    out = ideals[0]
    ext = _elimination_ring(ring)
    p = ring.p
    for J in ideals[1:]:
        gens = []
        for g in out.gens:
            gens.append({(1,) + e: c for e, c in g.terms.items()})
        for g in J.gens:
            lifted = {(0,) + e: c for e, c in g.terms.items()}
            lifted.update({(1,) + e: -c % p for e, c in g.terms.items()})
            gens.append(lifted)
        basis = _buchberger(gens, ext.key, p)
        kept = [Poly(ring, {e[1:]: c for e, c in g.items()}) for lm, g in basis if lm[0] == 0]
        out = IdealHandle(ring, kept)
        out._basis = [(g.lead(), g.terms) for g in kept]
    return out


def ideal_eq(I: IdealHandle, J: IdealHandle) -> bool:
    _same_ring(I, J)
    return I.contains_ideal(J) and J.contains_ideal(I)


def divide_exact(f: Poly, g: Poly) -> Poly:
    """f / g when g divides f; raises ValueError otherwise."""
    ring = f.ring
    p = ring.p
    lg = g.lead()
    inv = pow(g.terms[lg], -1, p)
    rest = dict(f.terms)
    q: dict = {}
    while rest:
        m = _lead(rest, ring.key)
        if not _divides(lg, m):
            raise ValueError(f"{g} does not divide {f}")
        shift = _mono_div(m, lg)
        c = rest[m] * inv % p
        q[shift] = c
        _sub_multiple(rest, g.terms, c, shift, p)
    return Poly(ring, q)


def colon(J: IdealHandle, g: Poly) -> IdealHandle:
    """(J : g) = { h : h g in J }."""
    ring = J.ring
    g = ring(g)
    if g.is_zero():
        return IdealHandle(ring, [1])
    meet = ideal_intersect(J, IdealHandle(ring, [g]))
    return IdealHandle(ring, [divide_exact(h, g) for h in meet.groebner()])


def local_contains(J: IdealHandle, g) -> bool:
    """Membership in the localization at the origin (equivalently in the completion).

    g lies in J R_m exactly when (J : g) is not contained in the maximal ideal m.
    """
    g = J.ring(g)
    if J.contains(g):
        return True
    return any(h.constant_term() for h in colon(J, g).gens)


def local_eq(I: IdealHandle, J: IdealHandle) -> bool:
    _same_ring(I, J)
    return all(local_contains(J, g) for g in I.gens) and all(local_contains(I, g) for g in J.gens)


# ---------------------------------------------------------------------------
# universal matrices and their height conditions
# ---------------------------------------------------------------------------

def _det3(m: list) -> Poly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _v_coefficients(f: Poly, base: PolyRing) -> dict:
    """Split a polynomial over base[v] (v last) into {k: coefficient of v^k}."""
    out: dict = {}
    for e, c in f.terms.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return {k: Poly(base, t) for k, t in out.items()}


def height_conditions(base: PolyRing, entries: Sequence[Sequence[str]]) -> list:
    """Relations forced on a 3x3 Frobenius matrix of Hodge type (2,1,0) modulo p.

    The matrix is given entrywise as strings in the variables of `base` and `v`.  The
    determinant must be a unit times v^3, so its coefficients of 1, v, v^2 vanish.
    Each 2x2 minor must vanish at v = -p; modulo p this kills its lowest nonzero
    v-coefficient.
    """
    ext = PolyRing(base.p, base.names + ("v",), aliases={k: str(a) for k, a in base.aliases.items()})
    m = [[ext.parse(x) for x in row] for row in entries]
    rels = []
    det = _v_coefficients(_det3(m), base)
    rels.extend(det[k] for k in range(3) if k in det)
    for rows in ((0, 1), (0, 2), (1, 2)):
        for cols in ((0, 1), (0, 2), (1, 2)):
            (r0, r1), (k0, k1) = rows, cols
            minor = m[r0][k0] * m[r1][k1] - m[r0][k1] * m[r1][k0]
            if minor.is_zero():
                continue
            coeffs = _v_coefficients(minor, base)
            rels.append(coeffs[min(coeffs)])
    for r in rels:
        if r.terms and all(sum(e) == 0 for e in r.terms):
            raise ValueError("height conditions are inconsistent: a unit relation appeared")
    return [r for r in rels if not r.is_zero()]


# ---------------------------------------------------------------------------
# the three cells
# ---------------------------------------------------------------------------

DEFAULT_PARAMS = (70, 35, 0)
SECOND_PARAMS = (60, 20, 3)
DEFAULT_PRIME = 101

CELL_VARIANTS = {
    # reading of the second id-cell monodromy factor
    "col2": ("shadow", "pattern", "literal"),
    # the third generator of U2 in the alpha cell: factor c13 or c31
    "u2": ("c13", "c31"),
}


class DegenerateParametersError(ValueError):
    """Raised when (a, b, c) violate the genericity inequalities mod p."""


def check_params(params: Sequence[int], p: int) -> tuple:
    a, b, c = (int(x) for x in params)
    forms = {
        "a-b": a - b, "b-c": b - c, "a-c": a - c,
        "-1-a+b": -1 - a + b, "-1-a+c": -1 - a + c, "-1-b+c": -1 - b + c,
    }
    bad = [k for k, v in forms.items() if v % p == 0]
    if bad:
        raise DegenerateParametersError(f"(a,b,c)=({a},{b},{c}) degenerate mod {p}: {', '.join(bad)} vanish")
    return a, b, c


@dataclass
class Cell:
    name: str
    ring: PolyRing
    params: tuple
    relations: IdealHandle
    components: dict  # name -> list of generator strings
    options: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def ideal(self, *gens) -> IdealHandle:
        """Ideal of the quotient ring, represented with the relations added."""
        return ideal_sum(IdealHandle(self.ring, gens), self.relations)

    def component(self, name: str) -> IdealHandle:
        return self.ideal(*self.components[name])

    def to_json(self) -> dict:
        return {
            "cell": self.name,
            "p": self.ring.p,
            "params": list(self.params),
            "vars": list(self.ring.names),
            "aliases": {k: str(v) for k, v in self.ring.aliases.items()},
            "relations": [str(g) for g in self.relations.gens],
            "components": {k: list(v) for k, v in self.components.items()},
            "options": dict(self.options),
        }


def _fmt(c: int) -> str:
    return f"({c})"


def _id_cell(params: tuple, p: int, col2: str = "shadow") -> Cell:
    a, b, c = params
    ring = PolyRing(p, ["c11", "c12", "c13", "c21", "c22", "c23", "c31", "c32", "c33"])
    entries = [
        ["c11+v", "c12", "c13"],
        ["v*c21", "c22+v", "c23"],
        ["v*c31", "v*c32", "c33+v"],
    ]
    printed = ["c11*c22", "c11*c23", "c11*c33", "c12*c33", "c22*c33+c11*c33+c11*c22"]
    x1 = f"{_fmt(-1 - a + c)}*c33 + {_fmt(-1 - a + b)}*c22 - {_fmt(-1 - a + c)}*c23*c32"
    x2 = {
        "shadow": f"{_fmt(a - b)}*c11 + {_fmt(-1 - b + c)}*c33 - {_fmt(a - b)}*c13*c31",
        "pattern": f"{_fmt(a - b)}*c33 + {_fmt(-1 - b + c)}*c11 - {_fmt(a - b)}*c13*c31",
        "literal": f"{_fmt(a - b)}*c33 + {_fmt(-1 - b + c)}*c33 - {_fmt(a - b)}*c13*c31",
    }[col2]
    x3 = f"{_fmt(b - c)}*c22 + {_fmt(a - c)}*c11 - {_fmt(b - c)}*c12*c21"
    rels = [ring.parse(s) for s in printed + [x1, x2, x3]]
    rels += height_conditions(ring, entries)
    components = {
        "L1": ["c11", "c22", "c33", "c13", "c23", "c12"],
        "L2": ["c11", "c22", "c33", "c21", "c31", "c23"],
        "L3": ["c11", "c22", "c33", "c12", "c31", "c32"],
        "W1": ["c22", "c33", "c23", "c12-c13*c32"],
        "W2": ["c33", "c11", "c31", "c23-c21*c13"],
        "W3": ["c11", "c22", "c12", "c31-c32*c21"],
    }
    return Cell("id", ring, params, IdealHandle(ring, rels), components, {"col2": col2})


def _alpha_cell(params: tuple, p: int, u2: str = "c13", proof_relations: bool = True) -> Cell:
    a, b, c = params
    ring = PolyRing(
        p,
        ["c11", "c12", "c13", "c22", "cp22", "c23", "c31", "c32", "c33"],
        aliases={"ct32": "c32 - cp22*c31"},
    )
    # the (3,3) entry c31*c23 + v is lifted to c33 + v; the minors recover c33 = c31*c23
    entries = [
        ["c11", "c12+v", "c13"],
        ["v", "c22+v*cp22", "c23"],
        ["v*c31", "v*c32", "c33+v"],
    ]
    printed = [
        "c31*c22", "c11*c23", "c11*c22",
        "c11*cp22 + c13*c32 - c13*cp22*c31 - c12",
        f"{_fmt(-1 - a + c)}*c23*(c32 - cp22*c31) - {_fmt(-1 - a + b)}*c22",
        "c33 - c31*c23",
    ]
    rels = [ring.parse(s) for s in printed]
    rels += height_conditions(ring, entries)
    if proof_relations:
        rels.append(ring.parse(f"{_fmt(a - b)}*c11*cp22 + {_fmt(c - b)}*c13*ct32"))
        rels.append(ring.parse(
            f"{_fmt(a - b)}*c13*c31*cp22 + {_fmt(c - b)}*c13*ct32 + {_fmt(-1 - a + c)}*c23*c31"
        ))
    u2_gen = {
        "c13": f"{_fmt(a - b)}*c13*cp22 + {_fmt(-1 - a + c)}*c23",
        "c31": f"{_fmt(a - b)}*c31*cp22 + {_fmt(-1 - a + c)}*c23",
    }[u2]
    components = {
        "L1": ["c11", "c13", "c23"],
        "Uob": ["c11", "c13", "c31"],
        "L2": ["c11", "c31", "ct32"],
        "Lob": ["c23", "cp22", "ct32"],
        "U1": ["c11-c13*c31", "c23", f"{_fmt(a - b)}*c31*cp22 + {_fmt(c - b)}*ct32"],
        "U2": ["c11", "ct32", u2_gen],
    }
    return Cell("alpha", ring, params, IdealHandle(ring, rels), components,
                {"u2": u2, "proof_relations": proof_relations})


def _alphabeta_cell(params: tuple, p: int) -> Cell:
    a, b, c = params
    ring = PolyRing(p, ["c12", "c13", "c22", "c23", "cp23", "c31", "cp33"])
    printed = [
        "c22*c31",
        "c12*c23 - c22*c13",
        "c13 - cp33*c12",
        f"c12*({_fmt(b - c)}*cp33 + {_fmt(a - b)}*c31*cp23)",
        f"{_fmt(-1 - a + c)}*c23 - {_fmt(-1 - a + b)}*c22*cp33",
    ]
    components = {
        "L1": ["c12", "c22"],
        "U1": ["c12", "c31"],
        "L2": ["c31", "cp33"],
        "U2": ["c22", "cp33"],
    }
    return Cell("alphabeta", ring, params, IdealHandle(ring, [ring.parse(s) for s in printed]), components)


def preset_cell(name: str, params: Sequence[int] = DEFAULT_PARAMS, p: int = DEFAULT_PRIME, **options) -> Cell:
    """Load one of the cells 'id', 'alpha', 'alphabeta' with starred units set to 1."""
    params = check_params(params, p)
    if name == "id":
        return _id_cell(params, p, **options)
    if name == "alpha":
        return _alpha_cell(params, p, **options)
    if name == "alphabeta":
        if options:
            raise TypeError(f"alphabeta cell takes no options, got {sorted(options)}")
        return _alphabeta_cell(params, p)
    raise ValueError(f"unknown cell {name!r}; expected id, alpha or alphabeta")


# ---------------------------------------------------------------------------
# lemma verification
# ---------------------------------------------------------------------------

@dataclass
class ClaimResult:
    """Outcome of one ideal equality X = Y inside a cell."""

    label: str
    lhs: str
    rhs: str
    poly_holds: bool
    local_holds: bool
    certificates: list  # per generator membership records

    @property
    def holds(self) -> bool:
        return self.local_holds

    def failing(self) -> list:
        return [c for c in self.certificates if not c["local"]]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "polynomial_ring": self.poly_holds,
            "local_ring": self.local_holds,
            "certificates": self.certificates,
        }


def _certify(label: str, lhs_text: str, rhs_text: str, X: IdealHandle, Y: IdealHandle, extra: IdealHandle) -> ClaimResult:
    """Decide X = Y modulo `extra` both globally and locally, recording every generator."""
    certs = []
    poly_ok = local_ok = True
    for side, src, dst in (("rhs in lhs", Y, X), ("lhs in rhs", X, Y)):
        for g in src.groebner():
            if extra.contains(g):
                continue
            r = dst.reduce(g)
            in_poly = r.is_zero()
            in_local = in_poly or local_contains(dst, g)
            poly_ok &= in_poly
            local_ok &= in_local
            certs.append({"direction": side, "generator": str(g), "poly": in_poly, "local": in_local,
                          "remainder": str(r)})
    return ClaimResult(label, lhs_text, rhs_text, poly_ok, local_ok, certs)


@dataclass
class LemmaReport:
    name: str
    cell: str
    params: tuple
    p: int
    groups: dict  # group -> list of ClaimResult (alternative readings)
    options: dict = field(default_factory=dict)

    def group_holds(self, group: str) -> bool:
        return any(c.holds for c in self.groups[group])

    def certified(self, group: str) -> list:
        return [c.label for c in self.groups[group] if c.holds]

    @property
    def holds(self) -> bool:
        return all(self.group_holds(g) for g in self.groups)

    def to_json(self) -> dict:
        return {
            "lemma": self.name,
            "cell": self.cell,
            "p": self.p,
            "params": list(self.params),
            "options": dict(self.options),
            "holds": self.holds,
            "groups": {
                g: {"holds": self.group_holds(g), "certified": self.certified(g),
                    "readings": [c.to_json() for c in claims]}
                for g, claims in self.groups.items()
            },
        }


def _meet(cell: Cell, *names: str) -> IdealHandle:
    return ideal_intersect(*(cell.component(n) for n in names))


def _lemma_ideal(cell: Cell) -> dict:
    S = {}
    W1L2 = _meet(cell, "W1", "L2")
    S["statement"] = _certify(
        "statement", "(W1∩L2)+(W2∩L3)", "W1",
        ideal_sum(W1L2, _meet(cell, "W2", "L3")), cell.component("W1"), cell.relations)
    S["proof"] = _certify(
        "proof", "(W1∩L2)+(W1∩L3)", "W1",
        ideal_sum(W1L2, _meet(cell, "W1", "L3")), cell.component("W1"), cell.relations)
    return {"sum": [S["statement"], S["proof"]]}


def _lemma_ideal_0(cell: Cell) -> dict:
    X = _meet(cell, "W1", "L2", "L3")
    return {"triple": [_certify("statement", "W1∩L2∩L3", "(c22,c33)", X, cell.ideal("c22", "c33"), cell.relations)]}


def _lemma_ideal_1_id(cell: Cell) -> dict:
    lhs = ideal_sum(_meet(cell, "W1", "W2", "L3"), _meet(cell, "W1", "W3", "L2"))
    rhs = _meet(cell, "W1", "L2", "L3")
    return {"sum": [_certify("statement", "(W1∩W2∩L3)+(W1∩W3∩L2)", "W1∩L2∩L3", lhs, rhs, cell.relations)]}


def _i_lambda0(cell: Cell) -> IdealHandle:
    return _meet(cell, "L1", "U1", "L2")


def _lemma_ideal_0_alpha(cell: Cell, items=("1", "2")) -> dict:
    out = {}
    if "1" in items:
        I0 = _i_lambda0(cell)
        out["1"] = [
            _certify("statement", "L1∩U1∩L2", "(c11-c13*c31, c23*c32, c23*ct32)", I0,
                     cell.ideal("c11-c13*c31", "c23*c32", "c23*ct32"), cell.relations),
            _certify("proof", "L1∩U1∩L2", "(c11-c13*c31, c23*c31, c23*ct32)", I0,
                     cell.ideal("c11-c13*c31", "c23*c31", "c23*ct32"), cell.relations),
        ]
    if "2" in items:
        out["2"] = [_certify("statement", "Uob∩L1∩L2", "(c11, c13*c31)", _meet(cell, "Uob", "L1", "L2"),
                             cell.ideal("c11", "c13*c31"), cell.relations)]
    return out


def _lemma_ideal_1_alpha(cell: Cell, items=("a", "b")) -> dict:
    out = {}
    if "a" in items:
        I0 = _i_lambda0(cell)
        lhs = ideal_sum(ideal_intersect(I0, cell.component("Uob")),
                        ideal_intersect(I0, cell.component("U2"), cell.component("Lob")))
        out["a"] = [_certify("statement", "(I∩Uob)+(I∩U2∩Lob)", "I = L1∩U1∩L2", lhs, I0, cell.relations)]
    if "b" in items:
        A = _meet(cell, "Uob", "L1", "L2")
        lhs = ideal_sum(ideal_intersect(A, cell.component("U1")), ideal_intersect(A, cell.component("U2")))
        out["b"] = [_certify("statement", "(A∩U1)+(A∩U2)", "A = Uob∩L1∩L2", lhs, A, cell.relations)]
    return out


LEMMAS = {
    "lem:ideal": ("id", lambda cell: _lemma_ideal(cell)),
    "lem:ideal:0": ("id", lambda cell: _lemma_ideal_0(cell)),
    "lem:ideal:1:id": ("id", lambda cell: _lemma_ideal_1_id(cell)),
    "lem:ideal:0:alpha": ("alpha", lambda cell: _lemma_ideal_0_alpha(cell)),
    "lem:ideal:0:alpha-1": ("alpha", lambda cell: _lemma_ideal_0_alpha(cell, ("1",))),
    "lem:ideal:0:alpha-2": ("alpha", lambda cell: _lemma_ideal_0_alpha(cell, ("2",))),
    "lem:ideal:1:alpha": ("alpha", lambda cell: _lemma_ideal_1_alpha(cell)),
    "lem:ideal:1:alpha-a": ("alpha", lambda cell: _lemma_ideal_1_alpha(cell, ("a",))),
    "lem:ideal:1:alpha-b": ("alpha", lambda cell: _lemma_ideal_1_alpha(cell, ("b",))),
}

PRIMARY_LEMMAS = ("lem:ideal", "lem:ideal:0", "lem:ideal:1:id", "lem:ideal:0:alpha", "lem:ideal:1:alpha")


def verify_lemma(name: str, params: Sequence[int] = DEFAULT_PARAMS, p: int = DEFAULT_PRIME,
                 cell: Cell | None = None, **options) -> LemmaReport:
    if name not in LEMMAS:
        raise KeyError(f"unknown lemma {name!r}; known: {', '.join(LEMMAS)}")
    cell_name, fn = LEMMAS[name]
    if cell is None:
        cell = preset_cell(cell_name, params, p, **options)
    elif cell.name != cell_name:
        raise ValueError(f"{name} lives in the {cell_name} cell, got {cell.name}")
    return LemmaReport(name, cell.name, cell.params, cell.ring.p, fn(cell), dict(cell.options))


def verify_all(params: Sequence[int] = DEFAULT_PARAMS, p: int = DEFAULT_PRIME) -> list:
    cells = {"id": preset_cell("id", params, p), "alpha": preset_cell("alpha", params, p)}
    return [verify_lemma(n, cell=cells[LEMMAS[n][0]]) for n in PRIMARY_LEMMAS]


# ---------------------------------------------------------------------------
# auxiliary isomorphisms used inside the proofs
# ---------------------------------------------------------------------------

def _inv(x: int, p: int) -> int:
    return pow(x % p, -1, p)


def auxiliary_checks(params: Sequence[int] = DEFAULT_PARAMS, p: int = DEFAULT_PRIME) -> list:
    """Presentations of small quotients claimed in the proofs, checked as ideal equalities.

    Each check substitutes explicit coordinates into a square-free monomial ideal and
    compares the resulting ideal with the quotient's defining ideal.  The coordinate
    changes are triangular, hence automorphisms of the power series ring.
    """
    a, b, c = check_params(params, p)
    out = []

    cell = preset_cell("id", params, p)
    kappa = (a - c) * _inv(b - c, p) % p
    coords = {"U": "c23", "V": "c12 - c13*c32", "W": f"{kappa}*c31 - c21*c32", "X": "c21", "Y": "c32", "Z": "c13"}
    monos = ["UV", "UW", "UY", "VW", "VX", "WZ"]
    images = [f"({coords[m[0]]})*({coords[m[1]]})" for m in monos]
    target = cell.ideal("c22", "c33", "c11 - c13*c31", *images)
    out.append(_certify("id: R/(c22,c33) = F[[U..Z]]/(UV,UW,UY,VW,VX,WZ)", "(c22,c33)",
                        "(c22,c33,c11-c13*c31) + images", cell.ideal("c22", "c33"), target, cell.relations))

    cell = preset_cell("alpha", params, p)
    lam = (b - c) * _inv(a - b, p) % p
    T = f"(c31*cp22 - {lam}*ct32)"
    mu = (-1 - a + c) * _inv(-1 - a + b, p) % p
    base = ["c11 - c13*c31", "c23*c31", "c23*ct32"]
    target = cell.ideal(*base, "c12 - c11*cp22 - c13*ct32", "c22", "c33",
                        f"c13*{T}", "c23*c31", f"c23*{T}")
    out.append(_certify("alpha: R/(c11-c13c31,c23c31,c23ct32) = F[[X,Y,Z,W,c22']]/(XY,YZ,WZ)", "(" + ", ".join(base) + ")",
                        "coordinates X=c13, Y=c31*cp22-lam*ct32, Z=c23, W=c31", cell.ideal(*base), target, cell.relations))

    kap = (1 + a - c) * _inv(a - b, p) % p
    target = cell.ideal("c11", "c12", f"c22 - {mu}*c23*ct32", "c33 - c31*c23",
                        "c13*c31", "c13*ct32", f"c31*({kap}*c23 - c13*cp22)")
    out.append(_certify("alpha: R/(c11,c13c31) presentation", "(c11, c13*c31)",
                        "(c13c31, c13ct32, c31(k c23 - c13 cp22))", cell.ideal("c11", "c13*c31"), target, cell.relations))
    return out


def components_cut_out_relations(cell: Cell) -> ClaimResult:
    """Whether the relation ideal equals the intersection of the listed components."""
    X = _meet(cell, *cell.components)
    return _certify(f"{cell.name}: relations = ∩ components", "∩ components", "relations", X, cell.relations,
                    IdealHandle(cell.ring, []))


# the two places the alpha-cell ideal L2 is written out
ALPHA_L2_LISTS = {"table": ("c11", "c31", "ct32"), "cell computation": ("c11", "c31", "ct32")}


def discrepancy_report(params: Sequence[int] = DEFAULT_PARAMS, p: int = DEFAULT_PRIME) -> dict:
    """Evaluate the alternative readings of ambiguous formulas, one verdict per reading."""
    out: dict = {"params": list(params), "p": p, "readings": []}

    def record(topic: str, reading: str, verdict: bool, detail: str = "") -> None:
        out["readings"].append({"topic": topic, "reading": reading, "holds": verdict, "detail": detail})

    rep = verify_lemma("lem:ideal", params, p)
    for c in rep.groups["sum"]:
        record("lem:ideal second summand", c.label, c.holds, f"{c.lhs} = {c.rhs}")
    rep = verify_lemma("lem:ideal:0:alpha-1", params, p)
    for c in rep.groups["1"]:
        record("lem:ideal:0:alpha item 1 generator", c.label, c.holds, c.rhs)

    for col2 in CELL_VARIANTS["col2"]:
        cell = preset_cell("id", params, p, col2=col2)
        cut = components_cut_out_relations(cell)
        lemmas = [verify_lemma(n, cell=cell) for n in ("lem:ideal", "lem:ideal:0", "lem:ideal:1:id")]
        record("id-cell second monodromy factor", col2,
               cut.holds and all(r.holds for r in lemmas),
               f"components cut out relations: {cut.holds}; " + ", ".join(f"{r.name}: {r.holds}" for r in lemmas))

    for u2 in CELL_VARIANTS["u2"]:
        cell = preset_cell("alpha", params, p, u2=u2)
        cut = components_cut_out_relations(cell)
        rep = verify_lemma("lem:ideal:1:alpha", cell=cell)
        record("alpha-cell U2 third generator", u2, cut.holds and rep.holds,
               f"components cut out relations: {cut.holds}; lem:ideal:1:alpha: {rep.holds}")

    cell = preset_cell("alpha", params, p, proof_relations=False)
    reps = [verify_lemma(n, cell=cell) for n in ("lem:ideal:0:alpha", "lem:ideal:1:alpha")]
    record("alpha-cell relations", "printed and height conditions only", all(r.holds for r in reps),
           ", ".join(f"{r.name}: {r.holds}" for r in reps))

    cell = preset_cell("alpha", params, p)
    lists = [cell.ideal(*gens) for gens in ALPHA_L2_LISTS.values()]
    record("alpha-cell L2 generator lists", " vs ".join(ALPHA_L2_LISTS),
           ideal_eq(lists[0], lists[1]) and local_eq(lists[0], lists[1]),
           "; ".join(f"{k}: ({', '.join(v)})" for k, v in ALPHA_L2_LISTS.items()))

    cut = components_cut_out_relations(preset_cell("alphabeta", params, p))
    record("alphabeta-cell relations", "printed", cut.holds,
           "nonzero remainders: " + "; ".join(c["generator"] for c in cut.failing()))
    return out
