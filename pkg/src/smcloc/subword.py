"""
Subwords of Weyl group words and weighted subword sums.

A u-subword of a word (s_{i_1}, ..., s_{i_l}) is a mask selecting letters
whose product is u.  Writing x_k for the product of the selected letters
among the first k, position k is classified as

    used,   x_{k-1} s_{i_k} < x_{k-1}   ->  J-
    used,   x_{k-1} s_{i_k} > x_{k-1}   ->  J+
    unused, x_{k-1} s_{i_k} < x_{k-1}   ->  E-
    unused, x_{k-1} s_{i_k} > x_{k-1}   ->  E+

and the twisted variant compares v x_{k-1} s_{i_k} with v x_{k-1}.

A `WeightScheme` attaches p11 (E-), p12 (J+), p21 (E+), p22 (J-) to each
position, evaluated at beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}.  The
resulting subword sum satisfies

    S_{u,ws} = p11 S_{u,w} + p12 S_{us,w}   if us < u,
    S_{u,ws} = p21 S_{u,w} + p22 S_{us,w}   if us > u,

which `subword_sum_dp` evaluates directly.

>>> from smcloc.coxeter import RootDatum
>>> D = RootDatum.parse("A4")
>>> w = (4, 3, 1, 4, 2, 1, 3, 2)
>>> c = classify(D, w, (1, 1, 0, 1, 1, 0, 0, 0))
>>> sorted(c.j_plus), sorted(c.e_plus), sorted(c.e_minus), sorted(c.j_minus)
([1, 2, 4, 5], [3, 6, 7], [8], [])
>>> u = D.parse_elem("s3.s4.s3.s2")
>>> subword_sum(D, w, u, r_scheme()).coefficients()
[1, -3, 4, -3, 1]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence

import flint

from .coxeter import RootDatum, Vector, WeylElem, beta_sequence
from .ring import LaurentPoly, Ring, char_eval

__all__ = [
    "Classification", "WeightScheme", "NonReducedWord",
    "classify", "u_subwords", "subword_sum", "subword_sum_dp",
    "r_scheme", "smc_scheme", "ajs_scheme", "constant_scheme",
    "twisted_r_subwords", "is_reduced_word",
]


class NonReducedWord(ValueError):
    """A weight scheme that needs a reduced word was given a non-reduced one."""


@dataclass(frozen=True)
class Classification:
    """The four position sets of a subword, 1-based."""

    j_plus: frozenset[int]
    j_minus: frozenset[int]
    e_plus: frozenset[int]
    e_minus: frozenset[int]

    @property
    def reduced(self) -> bool:
        return not self.j_minus

    @property
    def distinguished(self) -> bool:
        return not self.e_minus

    @property
    def used(self) -> frozenset[int]:
        return self.j_plus | self.j_minus

    @property
    def unused(self) -> frozenset[int]:
        return self.e_plus | self.e_minus

    def label(self, k: int) -> str:
        for name, s in (("J+", self.j_plus), ("J-", self.j_minus),
                        ("E+", self.e_plus), ("E-", self.e_minus)):
            if k in s:
                return name
        raise KeyError(k)


@dataclass(frozen=True)
class WeightScheme:
    """
    Four position weights as functions of the root beta_k.

    `zero` and `one` are the additive and multiplicative units of the value
    type, so schemes can produce Laurent polynomials, rational functions or
    flint polynomials alike.
    """

    p11: Callable[[Vector], Any]
    p12: Callable[[Vector], Any]
    p21: Callable[[Vector], Any]
    p22: Callable[[Vector], Any]
    zero: Any
    one: Any
    requires_reduced_word: bool = False
    name: str = "custom"

    def weight(self, label: str, beta: Vector):
        return {"E-": self.p11, "J+": self.p12, "E+": self.p21, "J-": self.p22}[label](beta)


def is_reduced_word(datum: RootDatum, word: Sequence[int]) -> bool:
    return datum.from_word(word).length == len(word)


def classify(datum: RootDatum, word: Sequence[int], mask: Sequence[int],
             v: WeylElem | None = None) -> Classification:
    """Classify each position of a subword; `v` gives the twisted variant."""
    if len(mask) != len(word):
        raise ValueError("mask and word have different lengths")
    x = v if v is not None else datum.identity
    sets: dict[str, set[int]] = {"J+": set(), "J-": set(), "E+": set(), "E-": set()}
    for k, (i, bit) in enumerate(zip(word, mask), start=1):
        descent = x.has_right_descent(i)
        if bit:
            sets["J-" if descent else "J+"].add(k)
            x = x.rmul(i)
        else:
            sets["E-" if descent else "E+"].add(k)
    return Classification(frozenset(sets["J+"]), frozenset(sets["J-"]),
                          frozenset(sets["E+"]), frozenset(sets["E-"]))


def u_subwords(datum: RootDatum, word: Sequence[int], u: WeylElem,
               v: WeylElem | None = None) -> Iterator[tuple[tuple[int, ...], list[str]]]:
    """
    Yield (mask, per-position labels) for every u-subword of `word`.

    Depth-first with the unused branch first, so masks come out in
    increasing binary order read left to right.  A branch is cut when the
    remaining letters cannot reach u.
    """
    n = len(word)
    twist = v if v is not None else datum.identity
    mask = [0] * n
    labels = [""] * n

    def rec(k: int, x: WeylElem, vx: WeylElem):
        if (x.inverse() * u).length > n - k:
            return
        if k == n:
            if x == u:
                yield tuple(mask), list(labels)
            return
        i = word[k]
        descent = vx.has_right_descent(i)
        mask[k] = 0
        labels[k] = "E-" if descent else "E+"
        yield from rec(k + 1, x, vx)
        mask[k] = 1
        labels[k] = "J-" if descent else "J+"
        yield from rec(k + 1, x.rmul(i), vx.rmul(i))
        mask[k] = 0

    yield from rec(0, datum.identity, twist)


def _check_word(datum: RootDatum, word: Sequence[int], scheme: WeightScheme) -> None:
    if scheme.requires_reduced_word and not is_reduced_word(datum, word):
        raise NonReducedWord(f"scheme {scheme.name} needs a reduced word, got {tuple(word)}")


def subword_sum(datum: RootDatum, word: Sequence[int], u: WeylElem, scheme: WeightScheme):
    """Sum over u-subwords of the product of position weights at beta_k."""
    word = tuple(word)
    _check_word(datum, word, scheme)
    betas = beta_sequence(datum, word)
    cache: dict[tuple[str, int], Any] = {}
    total = scheme.zero
    for _, labels in u_subwords(datum, word, u):
        term = scheme.one
        for k, lab in enumerate(labels):
            key = (lab, k)
            wt = cache.get(key)
            if wt is None:
                wt = cache[key] = scheme.weight(lab, betas[k])
            term = term * wt
        total = total + term
    return total


def subword_sum_dp(datum: RootDatum, word: Sequence[int], u: WeylElem, scheme: WeightScheme):
    """The same sum computed by the letter-by-letter recursion over all of W."""
    word = tuple(word)
    _check_word(datum, word, scheme)
    table = dict(subword_table_dp(datum, word, scheme))
    return table.get(u, scheme.zero)


def subword_table_dp(datum: RootDatum, word: Sequence[int], scheme: WeightScheme) -> dict:
    """S_{x, word} for every x reachable as a subword product (others vanish)."""
    table = {datum.identity: scheme.one}
    prefix = datum.identity
    for i in word:
        beta = prefix.act(datum.alpha(i))
        p11, p12, p21, p22 = (scheme.p11(beta), scheme.p12(beta),
                              scheme.p21(beta), scheme.p22(beta))
        candidates = set(table) | {x.rmul(i) for x in table}
        new = {}
        for x in candidates:
            old = table.get(x, scheme.zero)
            other = table.get(x.rmul(i), scheme.zero)
            if x.has_right_descent(i):
                val = p11 * old + p12 * other
            else:
                val = p21 * old + p22 * other
            if val != scheme.zero:
                new[x] = val
        table = new
        prefix = prefix.rmul(i)
    return table


# ---------------------------------------------------------------------------
# standard schemes
# ---------------------------------------------------------------------------

def r_scheme() -> WeightScheme:
    """p = (0, 1, q - 1, q); gives R_{u,w}(q) on reduced words."""
    q = LaurentPoly.monomial((1,))
    zero, one = LaurentPoly(), LaurentPoly.constant(1)
    return WeightScheme(lambda b: zero, lambda b: one, lambda b: q - 1, lambda b: q,
                        zero, one, requires_reduced_word=True, name="R")


def constant_scheme(value: int = 1) -> WeightScheme:
    c = LaurentPoly.constant(value)
    return WeightScheme(lambda b: c, lambda b: c, lambda b: c, lambda b: c,
                        LaurentPoly(), LaurentPoly.constant(1), name="constant")


def smc_scheme(datum: RootDatum, ring: Ring | None = None) -> WeightScheme:
    """
    Weights whose subword sum is the fixed-point value of the Segre motivic
    Chern class of an opposite Schubert cell:

        p11 = (1+y)e^b/(e^b+y),   p12 = (e^b-1)/(e^b+y),
        p21 = (1+y)/(e^b+y),      p22 = -y(e^b-1)/(e^b+y).
    """
    R = ring if ring is not None else datum.ring("y")
    y = R.gen("y")
    memo: dict[Vector, tuple] = {}

    def parts(b):
        hit = memo.get(b)
        if hit is None:
            e = char_eval(R, b)
            den = (e + y).inverse()
            hit = memo[b] = ((1 + y) * e * den, (e - 1) * den, (1 + y) * den, -y * (e - 1) * den)
        return hit

    return WeightScheme(lambda b: parts(b)[0], lambda b: parts(b)[1],
                        lambda b: parts(b)[2], lambda b: parts(b)[3],
                        R.zero(), R.one(), name="SMC")


def simple_root_ctx(datum: RootDatum) -> flint.fmpz_mpoly_ctx:
    return flint.fmpz_mpoly_ctx.get(tuple(f"a{i + 1}" for i in range(datum.rank)), "lex")


def root_as_poly(datum: RootDatum, beta: Vector):
    """A root as a linear form in the simple roots a1..ar."""
    ctx = simple_root_ctx(datum)
    r = datum.rank
    coords = datum.alpha_coords[tuple(beta)]
    return ctx.from_dict({tuple(int(k == j) for k in range(r)): c for j, c in enumerate(coords) if c})


def ajs_scheme(datum: RootDatum) -> WeightScheme:
    """p = (1, beta, 1, 0) with beta a linear form in a1..ar; reduced words only."""
    ctx = simple_root_ctx(datum)
    one = ctx.from_dict({(0,) * datum.rank: 1})
    zero = ctx.from_dict({})
    return WeightScheme(lambda b: one, lambda b: root_as_poly(datum, b), lambda b: one,
                        lambda b: zero, zero, one, requires_reduced_word=True, name="AJS")


def twisted_r_subwords(datum: RootDatum, u: WeylElem, w: WeylElem, v: WeylElem,
                       word: Sequence[int] | None = None) -> LaurentPoly:
    """
    R^{(v)}_{u,w}(q) as a sum over v-distinguished u-subwords of a reduced
    word of w, each contributing q^{|J^{(v),-}|} (q - 1)^{|E^{(v)}|}.
    """
    word = tuple(word) if word is not None else w.word
    if not is_reduced_word(datum, word) or datum.from_word(word) != w:
        raise NonReducedWord(f"{word} is not a reduced word for {w}")
    q = LaurentPoly.monomial((1,))
    total = LaurentPoly()
    for _, labels in u_subwords(datum, word, u, v):
        if "E-" in labels:
            continue
        total = total + q ** labels.count("J-") * (q - 1) ** labels.count("E+")
    return total
