"""
Extended affine Weyl group of type A2 and its f-fold products.

Conventions:
- A permutation s of {0,1,2} is stored in word form (s(0), s(1), s(2)). It acts on
  triples by moving coordinates, s(x)_{s(m)} = x_m, so that the permutation matrix
  with (k, m)-entry delta_{k, s(m)} satisfies P_s diag(v^x) P_s^{-1} = diag(v^{s(x)}).
- An element of the extended affine Weyl group is stored in the normal form w t_nu,
  corresponding to the monomial matrix P_w diag(v^nu). Composition is
  (w1 t_nu1)(w2 t_nu2) = w1 w2 t_{w2^{-1}(nu1) + nu2}.
- On points the element w t_nu acts by x -> w(x + nu); the p-dot action is
  w t_nu . mu = w(mu + p nu + eta) - eta with eta = (1, 0, -1).
- Tuples over f embeddings carry the Frobenius shift (pi x)_j = x_{j-1}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Perm = tuple  # word form (s(0), s(1), s(2))
Triple = tuple

ETA = (1, 0, -1)
ONE = (1, 1, 1)
ZERO = (0, 0, 0)
POSITIVE_ROOTS = ((0, 1), (1, 2), (0, 2))  # alpha_1, alpha_2, alpha_0 = alpha_1 + alpha_2

ALL_PERMS = tuple(itertools.permutations(range(3)))


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def perm_id() -> Perm:
    return (0, 1, 2)


def perm_mul(s: Perm, t: Perm) -> Perm:
    """Composition (s t)(m) = s(t(m))."""
    return tuple(s[t[m]] for m in range(3))


def perm_inv(s: Perm) -> Perm:
    out = [0, 0, 0]
    for m in range(3):
        out[s[m]] = m
    return tuple(out)


def perm_act(s: Perm, x: Sequence) -> tuple:
    """s(x) with s(x)_{s(m)} = x_m."""
    out = [None, None, None]
    for m in range(3):
        out[s[m]] = x[m]
    return tuple(out)


def perm_from_cycle(text: str) -> Perm:
    """Parse cycle notation over {1,2,3}, e.g. '(13)', '(123)', 'id', '1'."""
    text = text.strip().replace(" ", "")
    if text in ("", "1", "id", "e", "()"):
        return perm_id()
    images = list(range(3))
    for cyc in text.strip("()").split(")("):
        pts = [int(c) - 1 for c in cyc]
        for k, a in enumerate(pts):
            images[a] = pts[(k + 1) % len(pts)]
    if sorted(images) != [0, 1, 2]:
        raise ValueError(f"not a permutation: {text!r}")
    return tuple(images)


def perm_to_cycle(s: Perm) -> str:
    seen, parts = set(), []
    for start in range(3):
        if start in seen or s[start] == start:
            seen.add(start)
            continue
        cyc, m = [], start
        while m not in seen:
            seen.add(m)
            cyc.append(str(m + 1))
            m = s[m]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "id"


def perm_order(s: Perm) -> int:
    k, x = 1, s
    while x != perm_id():
        x = perm_mul(x, s)
        k += 1
    return k


def perm_sign(s: Perm) -> int:
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if s[i] > s[j])
    return -1 if inv % 2 else 1


def vadd(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


def pairing(x: Sequence, root: tuple) -> int:
    """<x, alpha^vee> for the positive root alpha = e_i - e_j given as (i, j)."""
    i, j = root
    return x[i] - x[j]


# ---------------------------------------------------------------------------
# single component
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class AffElem1:
    """The element w t_nu of the extended affine Weyl group of GL3."""

    w: Perm = (0, 1, 2)
    nu: Triple = (0, 0, 0)

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(a) for a in self.w))
        object.__setattr__(self, "nu", tuple(int(a) for a in self.nu))
        if sorted(self.w) != [0, 1, 2] or len(self.nu) != 3:
            raise ValueError(f"bad affine Weyl element {self.w}, {self.nu}")

    def __mul__(self, other: "AffElem1") -> "AffElem1":
        return AffElem1(perm_mul(self.w, other.w),
                        vadd(perm_act(perm_inv(other.w), self.nu), other.nu))

    def inverse(self) -> "AffElem1":
        # (w t_nu)^{-1} = t_{-nu} w^{-1} = w^{-1} t_{-w(nu)}
        return AffElem1(perm_inv(self.w), vscale(-1, perm_act(self.w, self.nu)))

    def __pow__(self, n: int) -> "AffElem1":
        base = self if n >= 0 else self.inverse()
        out = AffElem1()
        for _ in range(abs(n)):
            out = out * base
        return out

    def act(self, x: Sequence) -> tuple:
        """Usual affine action x -> w(x + nu)."""
        return perm_act(self.w, vadd(x, self.nu))

    def dot(self, mu: Sequence, p: int) -> tuple:
        """p-dot action w t_nu . mu = w(mu + p nu + eta) - eta."""
        return vsub(perm_act(self.w, vadd(vadd(mu, vscale(p, self.nu)), ETA)), ETA)

    def translation_left(self) -> Triple:
        """The weight lambda with self = t_lambda w."""
        return perm_act(self.w, self.nu)

    def is_translation(self) -> bool:
        return self.w == perm_id()

    def is_in_affine_weyl(self) -> bool:
        """Membership in W_a: the translation part lies in the root lattice."""
        return sum(self.nu) == 0

    def omega_class(self) -> int:
        """Image in Omega = X*(T)/Lambda_R ~ Z (the coordinate sum)."""
        return sum(self.nu)

    def matrix(self) -> list:
        """3x3 monomial matrix as rows of (column, v-exponent) or None entries."""
        rows = [[None] * 3 for _ in range(3)]
        for m in range(3):
            rows[self.w[m]][m] = self.nu[m]
        return rows

    def star(self) -> "AffElem1":
        """Transpose: (w t_nu)* = t_nu w^{-1}."""
        return from_left_translation(self.nu, perm_inv(self.w))

    def __str__(self) -> str:
        w = perm_to_cycle(self.w)
        if self.nu == ZERO:
            return w
        t = "t(%d,%d,%d)" % self.nu
        return t if w == "id" else f"{w}{t}"

    def to_json(self) -> dict:
        return {"w": [a + 1 for a in self.w], "nu": list(self.nu)}

    @staticmethod
    def from_json(data: dict) -> "AffElem1":
        return AffElem1(tuple(a - 1 for a in data["w"]), tuple(data["nu"]))


def t(nu: Sequence) -> AffElem1:
    return AffElem1(perm_id(), tuple(nu))


def perm_elem(s: Perm) -> AffElem1:
    return AffElem1(tuple(s), ZERO)


def from_left_translation(lam: Sequence, w: Perm) -> AffElem1:
    """The element t_lam w, written as w t_{w^{-1}(lam)}."""
    return AffElem1(tuple(w), perm_act(perm_inv(w), lam))


IDENTITY1 = AffElem1()
ALPHA = perm_elem((1, 0, 2))
BETA = perm_elem((0, 2, 1))
W0 = perm_elem((2, 1, 0))
GAMMA_PLUS = from_left_translation((1, 0, -1), (2, 1, 0))  # t_{(1,0,-1)}(13)
GAMMA = AffElem1((2, 1, 0), (1, 0, -1))  # (13) t_{(1,0,-1)}

SIMPLE = {
    +1: {"a": ALPHA, "b": BETA, "g": GAMMA_PLUS},
    -1: {"a": ALPHA, "b": BETA, "g": GAMMA},
}


def word_to_elem(word: str, base: int = +1) -> AffElem1:
    """Product of simple reflections given as a string over {a, b, g}."""
    gens = SIMPLE[base]
    out = IDENTITY1
    for ch in word:
        out = out * gens[ch]
    return out


def reflection(root: tuple, n: int) -> AffElem1:
    """Affine reflection in the hyperplane <x, alpha^vee> = n (usual action)."""
    i, j = root
    s = list(range(3))
    s[i], s[j] = j, i
    alpha = [0, 0, 0]
    alpha[i], alpha[j] = 1, -1
    return AffElem1(tuple(s), vscale(-n, alpha))


# ---------------------------------------------------------------------------
# length, reduced words, Bruhat order
# ---------------------------------------------------------------------------

def _base_point(base: int) -> tuple:
    # barycenter of the base alcove, scaled by 3
    return (base, 0, -base)


def length(x: AffElem1, base: int = +1) -> int:
    """Number of affine root hyperplanes separating the base alcove from its image.

    base = +1 uses the dominant base alcove, base = -1 the antidominant one.
    """
    b = _base_point(base)
    xb = perm_act(x.w, vadd(b, vscale(3, x.nu)))
    total = 0
    for root in POSITIVE_ROOTS:
        total += abs(pairing(xb, root) // 3 - pairing(b, root) // 3)
    return total


def reduced_word(x: AffElem1, base: int = +1) -> tuple:
    """Return (word, omega) with x = word * omega, word reduced and omega of length 0."""
    gens = SIMPLE[base]
    word = []
    cur = x
    ell = length(cur, base)
    while ell > 0:
        for ch, s in gens.items():
            nxt = s * cur
            if length(nxt, base) < ell:
                word.append(ch)
                cur = nxt
                ell -= 1
                break
        else:  # pragma: no cover - would contradict the exchange property
            raise RuntimeError(f"no descent found for {x}")
    return "".join(word), cur


def length_zero_part(x: AffElem1, base: int = +1) -> AffElem1:
    return reduced_word(x, base)[1]


def _subword_products(word: str, base: int) -> set:
    gens = SIMPLE[base]
    products = {IDENTITY1}
    for ch in word:
        s = gens[ch]
        products |= {z * s for z in products}
    return products


def bruhat_leq(x: AffElem1, y: AffElem1, base: int = +1) -> bool:
    """Bruhat order via the subword property on one reduced word of y."""
    wx, ox = reduced_word(x, base)
    wy, oy = reduced_word(y, base)
    if ox != oy:
        raise ValueError(f"{x} and {y} lie in different cosets of W_a")
    if len(wx) > len(wy):
        return False
    return word_to_elem(wx, base) in _subword_products(wy, base)


def translation_length(lam: Sequence) -> int:
    return sum(abs(pairing(lam, r)) for r in POSITIVE_ROOTS)


def translations_of(lam: Sequence) -> list:
    return sorted({t(perm_act(s, lam)) for s in ALL_PERMS})


def admissible_set(lam: Sequence, base: int = +1) -> frozenset:
    """Adm(lam) = { x : x <= t_{s(lam)} for some s in S3 } for the given base alcove."""
    lam = tuple(lam)
    if not (lam[0] >= lam[1] >= lam[2]):
        raise ValueError(f"{lam} is not dominant")
    top = translations_of(lam)
    ell = translation_length(lam)
    omega = length_zero_part(top[0], base)
    bound = 2 * pairing(lam, (0, 2)) + 1
    shift = sum(lam)
    out = set()
    rng = range(-bound - abs(shift), bound + abs(shift) + 1)
    for n0 in rng:
        for n1 in rng:
            n2 = shift - n0 - n1
            nu = (n0, n1, n2)
            if any(abs(pairing(nu, r)) > bound for r in POSITIVE_ROOTS):
                continue
            for w in ALL_PERMS:
                x = AffElem1(w, nu)
                if length(x, base) > ell or length_zero_part(x, base) != omega:
                    continue
                if any(bruhat_leq(x, y, base) for y in top):
                    out.add(x)
    return frozenset(out)


# ---------------------------------------------------------------------------
# f-tuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffElem:
    """An f-tuple of extended affine Weyl group elements, index j = 0..f-1."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def f(self) -> int:
        return len(self.components)

    def __getitem__(self, j: int) -> AffElem1:
        return self.components[j]

    def __iter__(self):
        return iter(self.components)

    def __mul__(self, other: "AffElem") -> "AffElem":
        return compose(self, other)

    def inverse(self) -> "AffElem":
        return AffElem(tuple(x.inverse() for x in self.components))

    def pi(self, k: int = 1) -> "AffElem":
        """Frobenius shift (pi x)_j = x_{j-k}."""
        f = self.f
        return AffElem(tuple(self.components[(j - k) % f] for j in range(f)))

    def star(self) -> "AffElem":
        return star(self)

    def dot(self, mu, p: int):
        return dot(self, mu, p)

    def act(self, x):
        return tuple(c.act(xj) for c, xj in zip(self.components, x))

    def finite_part(self) -> tuple:
        return tuple(c.w for c in self.components)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"

    def to_json(self) -> dict:
        return {"f": self.f, "components": [c.to_json() for c in self.components]}

    @staticmethod
    def from_json(data: dict) -> "AffElem":
        comps = tuple(AffElem1.from_json(c) for c in data["components"])
        if "f" in data and data["f"] != len(comps):
            raise ValueError("f does not match the number of components")
        return AffElem(comps)


def identity(f: int) -> AffElem:
    return AffElem((IDENTITY1,) * f)


def constant(x: AffElem1, f: int) -> AffElem:
    return AffElem((x,) * f)


def compose(x: AffElem, y: AffElem) -> AffElem:
    if x.f != y.f:
        raise ValueError(f"mismatched f: {x.f} vs {y.f}")
    return AffElem(tuple(a * b for a, b in zip(x.components, y.components)))


def dot(x: AffElem, mu: Sequence, p: int) -> tuple:
    """Componentwise p-dot action on an f-tuple of triples."""
    if x.f != len(mu):
        raise ValueError(f"mismatched f: {x.f} vs {len(mu)}")
    return tuple(c.dot(m, p) for c, m in zip(x.components, mu))


def star(x: AffElem) -> AffElem:
    """Adjoint: (w t_nu)*_j = t_{nu_{f-1-j}} w_{f-1-j}^{-1}."""
    f = x.f
    return AffElem(tuple(x.components[f - 1 - j].star() for j in range(f)))


def f_length(x: AffElem, base: int = +1) -> tuple:
    return tuple(length(c, base) for c in x.components)


def monomial_matrix_product(a: list, b: list) -> list:
    """Multiply two 3x3 monomial matrices given as entry grids of v-exponents (None = 0)."""
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for k in range(3):
            if a[i][k] is None:
                continue
            for j in range(3):
                if b[k][j] is None:
                    continue
                if out[i][j] is not None:
                    raise ValueError("product is not monomial")
                out[i][j] = a[i][k] + b[k][j]
    return out


def elem_from_matrix(grid: list) -> AffElem1:
    """Inverse of AffElem1.matrix for monomial grids."""
    w = [None] * 3
    nu = [0, 0, 0]
    for k in range(3):
        for m in range(3):
            if grid[k][m] is not None:
                w[m] = k
                nu[m] = grid[k][m]
    return AffElem1(tuple(w), tuple(nu))


def affine_point(x: AffElem1, point: Sequence[Fraction]) -> tuple:
    return x.act(point)


def enumerate_window(bound: int, shift: int = 0) -> Iterable[AffElem1]:
    """All w t_nu with sum(nu) = shift and |nu_i - nu_j| <= bound."""
    rng = range(-bound - abs(shift), bound + abs(shift) + 1)
    for n0 in rng:
        for n1 in rng:
            nu = (n0, n1, shift - n0 - n1)
            if all(abs(pairing(nu, r)) <= bound for r in POSITIVE_ROOTS):
                for w in ALL_PERMS:
                    yield AffElem1(w, nu)
