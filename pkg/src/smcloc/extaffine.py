"""
The extended affine Weyl group W_ext = W x| X_*(T).

An element is a pair (w, lam) standing for w t_lam, with product

    (w, lam)(w', mu) = (w w', w'^{-1} lam + mu).

Affine roots alpha + k delta are acted on by
w t_lam (mu + k delta) = w mu + (k - <lam, mu>) delta, the affine simple
roots are alpha_i (i >= 1) and alpha_0 = -theta + delta, and
s_0 = t_{theta^vee} s_theta = (s_theta, -theta^vee).

For GL_n an element is also an n-periodic bijection of Z through
f(i) = w(i) + n lam_i, written by its window [f(1), ..., f(n)].

>>> G = ExtAffineGroup.parse("GL2")
>>> t = G.translation((1, 0))
>>> t.length, t.window()
(1, (3, 2))
>>> omega, word = t.factorization()
>>> omega.window(), word
((2, 3), (1,))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .coxeter import RootDatum, Vector, WeylElem, bruhat_leq

__all__ = [
    "ExtAffineGroup", "ExtAffineElem", "AffineRoot", "NotInImage",
    "aff_mul", "aff_length", "reduced_factorization", "make_f", "split_f",
    "window_view", "from_window", "bounded_affine_perms", "is_bounded",
    "stabilizer_indices", "is_dominant", "weyl_pairs",
]


class NotInImage(ValueError):
    """An affine element is not of the form u t_lam w^{-1} with w in W^P."""


@dataclass(frozen=True)
class AffineRoot:
    """alpha + level * delta with alpha a finite root (character vector)."""

    alpha: Vector
    level: int

    def is_positive(self, datum: RootDatum) -> bool:
        if self.level > 0:
            return True
        return self.level == 0 and datum.is_positive(self.alpha)


class ExtAffineGroup:
    """W_ext for a finite root datum; elements share this object's caches."""

    _cache: dict[str, ExtAffineGroup] = {}

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.rank = datum.rank
        self.simple_indices = range(0, datum.rank + 1)
        self.caches: dict[str, dict] = {}
        self.theta = datum.highest_root
        self.theta_coroot = datum.highest_coroot
        self.s_theta = datum.reflection(self.theta)

    @classmethod
    def parse(cls, text: str) -> ExtAffineGroup:
        datum = RootDatum.parse(text)
        hit = cls._cache.get(datum.name)
        if hit is None:
            hit = cls._cache[datum.name] = cls(datum)
        return hit

    def __repr__(self) -> str:
        return f"ExtAffineGroup({self.datum.name})"

    def __reduce__(self):
        return (ExtAffineGroup.parse, (self.datum.name,))

    @property
    def n(self) -> int:
        if not self.datum.is_gl:
            raise ValueError("window notation needs a GL_n datum")
        return self.datum.dim

    def elem(self, w: WeylElem, lam: Sequence[int]) -> ExtAffineElem:
        return ExtAffineElem(w, tuple(int(x) for x in lam), self)

    @cached_property
    def identity(self) -> ExtAffineElem:
        return self.elem(self.datum.identity, (0,) * self.datum.dim)

    def translation(self, lam: Sequence[int]) -> ExtAffineElem:
        return self.elem(self.datum.identity, lam)

    def finite(self, w: WeylElem) -> ExtAffineElem:
        return self.elem(w, (0,) * self.datum.dim)

    def s(self, i: int) -> ExtAffineElem:
        cache = self.caches.setdefault("simple", {})
        hit = cache.get(i)
        if hit is None:
            if i == 0:
                hit = self.elem(self.s_theta, tuple(-x for x in self.theta_coroot))
            else:
                hit = self.finite(self.datum.s(i))
            cache[i] = hit
        return hit

    def from_word(self, word: Iterable[int], omega: ExtAffineElem | None = None) -> ExtAffineElem:
        g = omega if omega is not None else self.identity
        for i in word:
            g = g * self.s(i)
        return g

    def simple_root(self, i: int) -> AffineRoot:
        if i == 0:
            return AffineRoot(tuple(-x for x in self.theta), 1)
        return AffineRoot(self.datum.alpha(i), 0)

    def shift(self) -> ExtAffineElem:
        """GL_n generator of the length-0 subgroup, window [2, 3, ..., n+1]."""
        return from_window(self, tuple(range(2, self.n + 2)))

    def affine_ball(self, radius: int) -> list[ExtAffineElem]:
        """Elements of the affine Weyl group (trivial length-0 part) of length <= radius."""
        seen = {self.identity}
        frontier = [self.identity]
        for _ in range(radius):
            nxt = []
            for g in frontier:
                for i in self.simple_indices:
                    h = g * self.s(i)
                    if h not in seen and h.length > g.length:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return sorted(seen, key=lambda g: (g.length, g.sort_key()))


@dataclass(frozen=True)
class ExtAffineElem:
    """w t_lam, stored as the pair (finite part, translation)."""

    finite: WeylElem
    transl: Vector
    group: ExtAffineGroup = field(compare=False, repr=False)

    # -- group law ----------------------------------------------------------

    def __mul__(self, other: ExtAffineElem) -> ExtAffineElem:
        if not isinstance(other, ExtAffineElem):
            return NotImplemented
        moved = other.finite.inverse().act_cochar(self.transl)
        return ExtAffineElem(self.finite * other.finite,
                             tuple(a + b for a, b in zip(moved, other.transl)), self.group)

    def inverse(self) -> ExtAffineElem:
        lam = self.finite.act_cochar(self.transl)
        return ExtAffineElem(self.finite.inverse(), tuple(-x for x in lam), self.group)

    def act_root(self, root: AffineRoot) -> AffineRoot:
        pairing = RootDatum.pair(self.transl, root.alpha)
        return AffineRoot(self.finite.act(root.alpha), root.level - pairing)

    def act_char(self, char: Sequence[int]) -> Vector:
        """Action on characters of the small torus (delta -> 0): only w matters."""
        return self.finite.act(char)

    def simple_root_char(self, i: int) -> Vector:
        """Character of g(alpha_i) on the small torus, alpha_0 = -theta."""
        return self.finite.act(self.group.simple_root(i).alpha)

    # -- Coxeter structure --------------------------------------------------

    @property
    def owner(self) -> ExtAffineGroup:
        return self.group

    @property
    def simple_indices(self) -> range:
        return self.group.simple_indices

    @cached_property
    def length(self) -> int:
        D = self.group.datum
        lam = self.transl
        total = 0
        for a in D.positive_roots:
            p = RootDatum.pair(lam, a)
            if D.is_positive(self.finite.act(a)):
                total += abs(p)
            else:
                total += abs(p + 1)
        return total

    def has_right_descent(self, i: int) -> bool:
        return not self.act_root(self.group.simple_root(i)).is_positive(self.group.datum)

    def has_left_descent(self, i: int) -> bool:
        return not self.inverse().act_root(self.group.simple_root(i)).is_positive(self.group.datum)

    def rmul(self, i: int) -> ExtAffineElem:
        return self * self.group.s(i)

    def lmul(self, i: int) -> ExtAffineElem:
        return self.group.s(i) * self

    def is_identity(self) -> bool:
        return self == self.group.identity

    def is_length_zero(self) -> bool:
        return self.length == 0

    def factorization(self) -> tuple[ExtAffineElem, tuple[int, ...]]:
        """(omega, word) with self = omega * s_word, |word| = length, omega of length 0."""
        cache = self.group.caches.setdefault("factor", {})
        hit = cache.get(self)
        if hit is not None:
            return hit
        stripped = []
        g = self
        while g.length:
            i = next(i for i in self.simple_indices if g.has_right_descent(i))
            stripped.append(i)
            g = g.rmul(i)
        res = (g, tuple(reversed(stripped)))
        cache[self] = res
        return res

    # -- views --------------------------------------------------------------

    def window(self) -> tuple[int, ...]:
        return window_view(self)

    def sort_key(self) -> tuple:
        return (self.finite.length, self.finite.word, self.transl)

    def __str__(self) -> str:
        if self.group.datum.is_gl:
            return "[" + ",".join(str(x) for x in self.window()) + "]"
        return f"{self.finite}*t({','.join(str(x) for x in self.transl)})"

    def __repr__(self) -> str:
        return f"ExtAffineElem({self.group.datum.name}: {self})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def aff_mul(a: ExtAffineElem, b: ExtAffineElem) -> ExtAffineElem:
    return a * b


def aff_length(g: ExtAffineElem) -> int:
    return g.length


def reduced_factorization(g: ExtAffineElem) -> tuple[ExtAffineElem, tuple[int, ...]]:
    return g.factorization()


def make_f(u: WeylElem, w: WeylElem, lam: Sequence[int]) -> ExtAffineElem:
    """f^lam_{u,w} = u t_lam w^{-1}."""
    G = ExtAffineGroup.parse(u.datum.name)
    return G.finite(u) * G.translation(lam) * G.finite(w.inverse())


def stabilizer_indices(datum: RootDatum, lam: Sequence[int]) -> frozenset[int]:
    """{i : <lam, alpha_i> = 0}."""
    return frozenset(i for i in range(1, datum.rank + 1)
                     if RootDatum.pair(lam, datum.alpha(i)) == 0)


def is_dominant(datum: RootDatum, lam: Sequence[int]) -> bool:
    return all(RootDatum.pair(lam, a) >= 0 for a in datum.simple_roots)


def split_f(f: ExtAffineElem, lam: Sequence[int]) -> tuple[WeylElem, WeylElem]:
    """Inverse of make_f: the unique (u, w) with w in W^P and f = u t_lam w^{-1}."""
    G = f.group
    D = G.datum
    neg = G.translation(tuple(-x for x in lam))
    hits = []
    for w in D.minimal_coset_reps(stabilizer_indices(D, lam)):
        g = f * G.finite(w) * neg
        if all(x == 0 for x in g.transl):
            hits.append((g.finite, w))
    if len(hits) != 1:
        raise NotInImage(f"{f} is not u t_lam w^-1 for lam={tuple(lam)} ({len(hits)} candidates)")
    return hits[0]


def window_view(g: ExtAffineElem) -> tuple[int, ...]:
    """[f(1), ..., f(n)] with f(i) = w(i) + n lam_i (GL_n only)."""
    n = g.group.n
    out = []
    for i in range(n):
        img = g.finite.act(tuple(int(k == i) for k in range(n)))
        j = img.index(1)
        out.append(j + 1 + n * g.transl[i])
    return tuple(out)


def from_window(group: ExtAffineGroup, window: Sequence[int]) -> ExtAffineElem:
    """
    >>> G = ExtAffineGroup.parse("GL3")
    >>> from_window(G, (0, 2, 4)) == G.s(0)
    True
    """
    n = group.n
    if len(window) != n:
        raise ValueError(f"window needs {n} entries")
    residues = [(f - 1) % n for f in window]
    if sorted(residues) != list(range(n)):
        raise ValueError(f"{tuple(window)} is not a window of an affine permutation")
    matrix = [[0] * n for _ in range(n)]
    lam = []
    for i, f in enumerate(window):
        j = residues[i]
        matrix[j][i] = 1
        lam.append((f - 1 - j) // n)
    w = WeylElem(tuple(tuple(r) for r in matrix), group.datum)
    return group.elem(w, lam)


def is_bounded(window: Sequence[int], k: int | None = None) -> bool:
    n = len(window)
    if any(not (i <= f <= i + n) for i, f in enumerate(window, start=1)):
        return False
    if sorted((f - 1) % n for f in window) != list(range(n)):
        return False
    total = sum(f - i for i, f in enumerate(window, start=1))
    if total % n:
        return False
    return k is None or total // n == k


def bounded_affine_perms(n: int, k: int) -> list[tuple[int, ...]]:
    """
    Windows with i <= f(i) <= i + n and sum (f(i) - i) = k n, in lexicographic order.

    >>> bounded_affine_perms(1, 1)
    [(2,)]
    >>> len(bounded_affine_perms(3, 1))
    7
    """
    out: list[tuple[int, ...]] = []
    target = k * n
    window: list[int] = []
    used: set[int] = set()

    def rec(i: int, excess: int):
        if i > n:
            if excess == target:
                out.append(tuple(window))
            return
        # every remaining position adds between 0 and n to the excess
        left = n - i + 1
        if excess > target or excess + left * n < target:
            return
        for f in range(i, i + n + 1):
            r = (f - 1) % n
            if r in used:
                continue
            used.add(r)
            window.append(f)
            rec(i + 1, excess + f - i)
            window.pop()
            used.discard(r)

    rec(1, 0)
    return out


def weyl_pairs(datum: RootDatum, lam: Sequence[int]) -> list[tuple[WeylElem, WeylElem]]:
    """All (u, w) with w in W^P and u <= w, sorted."""
    reps = datum.minimal_coset_reps(stabilizer_indices(datum, lam))
    return [(u, w) for w in reps for u in datum.elements() if bruhat_leq(u, w)]
