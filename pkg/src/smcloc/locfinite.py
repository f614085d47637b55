"""
Fixed-point restrictions of motivic Chern classes of Schubert cells in G/B.

Pinned conventions, all validated by the test battery:

* the line bundle L_mu restricts to e^{w mu} at the fixed point w;
* the cotangent weights at w are {w alpha : alpha > 0}, so
  lambda_y(T^*)|_w = prod_{alpha>0} (1 + y e^{w alpha}) and the Lefschetz
  denominator is prod_{alpha>0} (1 - e^{w alpha});
* the left Weyl action is (v^L gamma)|_u = v(gamma|_{v^{-1} u}).

Values are `RatFun` in the ring t1..t_dim, y of the root datum.

>>> from smcloc.coxeter import RootDatum
>>> D = RootDatum.parse("GL3")
>>> s1, s2 = D.s(1), D.s(2)
>>> str(smc_y_restrict(s2, s1 * s2) * prefactor(D, s1 * s2))
'(-y^2*t2^2 - y*t2^2 - y*t2*t3 - t2*t3)/(t1*t2 - t1*t3 - t2^2 + t2*t3)'
>>> str(limit_to_rpoly(s2, s1 * s2))
'-y - 1'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Hashable, Sequence

import flint

from .coxeter import RootDatum, WeylElem, bruhat_leq
from .hecke import r_poly
from .ring import (LaurentPoly, RatFun, Ring, char_eval, int_terms, lattice_coordinates,
                   limit_at_chamber)
from .subword import (ajs_scheme, root_as_poly, simple_root_ctx, smc_scheme, subword_sum,
                      subword_table_dp)

__all__ = [
    "LocTable", "Column",
    "weyl_act", "lefschetz", "lambda_y", "prefactor", "rpoly_at_minus_y",
    "smc_y_restrict", "smc_column", "mc_y_restrict", "mc_x_restrict", "mc_x_column",
    "dl_right", "dl_right_dual", "dl_left", "dl_left_dual", "left_act",
    "point_class", "mc_dual_restrict", "mc_dual_column", "pairing",
    "ajs_billey", "ajs_recursion", "smc0_lowest_degree", "poly_terms",
    "limit_to_rpoly", "limit_to_twisted",
]

# a class is represented by its restrictions to every fixed point
Column = dict


@dataclass
class LocTable:
    """Restriction tables of several classes, keyed by a label then a fixed point."""

    datum: RootDatum
    ring: Ring
    values: dict[Hashable, Column] = field(default_factory=dict)

    def __getitem__(self, label) -> Column:
        return self.values[label]

    def __setitem__(self, label, column: Column) -> None:
        missing = [w for w in self.datum.elements() if w not in column]
        if missing:
            raise ValueError(f"column {label!r} misses fixed points {missing[:3]}")
        self.values[label] = column

    def labels(self) -> list:
        return list(self.values)


# ---------------------------------------------------------------------------
# characters and Weyl action on values
# ---------------------------------------------------------------------------

def _ring(datum: RootDatum, ring: Ring | None) -> Ring:
    return ring if ring is not None else datum.ring("y")


def weyl_act(w: WeylElem, f: RatFun) -> RatFun:
    """Apply w to the characters of f: e^mu -> e^{w mu}; other generators fixed."""
    ring = f.ring
    cache = w.datum.caches.setdefault("weyl_images", {})
    key = (w, ring.names)
    images = cache.get(key)
    if images is None:
        d = w.datum.dim
        images = []
        for k in range(ring.nvars):
            if k < d:
                col = w.act(tuple(int(j == k) for j in range(d)))
                images.append(tuple(col) + (0,) * (ring.nvars - d))
            else:
                images.append(tuple(int(j == k) for j in range(ring.nvars)))
        cache[key] = images = tuple(images)
    return f.monomial_map(ring, images)


def _e(ring: Ring, weight) -> RatFun:
    return char_eval(ring, weight)


def _product(ring: Ring, factors) -> RatFun:
    out = ring.one()
    for f in factors:
        out = out * f
    return out


def lefschetz(datum: RootDatum, w: WeylElem, ring: Ring | None = None) -> RatFun:
    """prod_{alpha>0} (1 - e^{w alpha})."""
    R = _ring(datum, ring)
    return _product(R, (1 - _e(R, w.act(a)) for a in datum.positive_roots))


def lambda_y(datum: RootDatum, w: WeylElem, ring: Ring | None = None) -> RatFun:
    """prod_{alpha>0} (1 + y e^{w alpha}), the cotangent lambda_y class at w."""
    R = _ring(datum, ring)
    y = R.gen("y")
    return _product(R, (1 + y * _e(R, w.act(a)) for a in datum.positive_roots))


def prefactor(datum: RootDatum, w: WeylElem, ring: Ring | None = None) -> RatFun:
    """prod_{alpha>0} (1 + y e^{w alpha}) / (1 - e^{w alpha})."""
    return lambda_y(datum, w, ring) / lefschetz(datum, w, ring)


def rpoly_at_minus_y(p: LaurentPoly, ring: Ring) -> RatFun:
    """Substitute q = -y in a univariate Laurent polynomial."""
    k = ring.index["y"]
    image = tuple(int(j == k) for j in range(ring.nvars))
    return p.to_ratfun(ring, [image], sign=[-1])


# ---------------------------------------------------------------------------
# SMC / MC restrictions
# ---------------------------------------------------------------------------

def _smc_by_w(datum: RootDatum, w: WeylElem, ring: Ring) -> dict:
    cache = datum.caches.setdefault("smc_rows", {})
    key = (w, ring.names)
    row = cache.get(key)
    if row is None:
        row = cache[key] = subword_table_dp(datum, w.word, smc_scheme(datum, ring))
    return row


def smc_y_restrict(u: WeylElem, w: WeylElem, ring: Ring | None = None,
                   word: Sequence[int] | None = None) -> RatFun:
    """
    SMC_y(Y(u)°)|_w by the subword formula over a word for w.

    Without `word` the reduced word of w is used and the value is read from a
    memoized table; with `word` (any word for w, reduced or not) the subwords
    are enumerated explicitly.
    """
    datum = w.datum
    R = _ring(datum, ring)
    if word is not None:
        if datum.from_word(word) != w:
            raise ValueError(f"{tuple(word)} is not a word for {w}")
        return subword_sum(datum, word, u, smc_scheme(datum, R))
    return _smc_by_w(datum, w, R).get(u, R.zero())


def smc_column(datum: RootDatum, u: WeylElem, ring: Ring | None = None) -> Column:
    R = _ring(datum, ring)
    return {w: smc_y_restrict(u, w, R) for w in datum.elements()}


def mc_y_restrict(u: WeylElem, z: WeylElem, ring: Ring | None = None) -> RatFun:
    """MC_y(Y(u)°)|_z = SMC_y(Y(u)°)|_z * lambda_y(T^*)|_z."""
    return smc_y_restrict(u, z, ring) * lambda_y(z.datum, z, ring)


def mc_x_restrict(w: WeylElem, z: WeylElem, ring: Ring | None = None) -> RatFun:
    """MC_y(X(w)°)|_z = w0( MC_y(Y(w0 w)°)|_{w0 z} )."""
    datum = w.datum
    w0 = datum.longest()
    return weyl_act(w0, mc_y_restrict(w0 * w, w0 * z, ring))


def mc_x_column(datum: RootDatum, w: WeylElem, ring: Ring | None = None) -> Column:
    return {z: mc_x_restrict(w, z, ring) for z in datum.elements()}


def point_class(datum: RootDatum, p: WeylElem, ring: Ring | None = None) -> Column:
    """[O_p] for the fixed point p: prod_{alpha>0}(1 - e^{p alpha}) at p, zero elsewhere."""
    R = _ring(datum, ring)
    return {z: lefschetz(datum, p, R) if z == p else R.zero() for z in datum.elements()}


# ---------------------------------------------------------------------------
# Demazure-Lusztig operators on columns
# ---------------------------------------------------------------------------

def _any_ring(column: Column) -> Ring:
    return next(iter(column.values())).ring


def dl_right(column: Column, i: int) -> Column:
    """
    T_i^R = (1 + y L_{alpha_i}) pi^* pi_* - id, localized:
    (T gamma)|_w = (1 + y e)(gamma_w - e gamma_{ws}) / (1 - e) - gamma_w, e = e^{w alpha_i}.
    """
    R = _any_ring(column)
    y = R.gen("y")
    out = {}
    for w, g in column.items():
        e = _e(R, w.act(w.datum.alpha(i)))
        out[w] = (1 + y * e) * (g - e * column[w.rmul(i)]) / (1 - e) - g
    return out


def dl_right_dual(column: Column, i: int) -> Column:
    """
    T_i^{R,vee} = pi^* pi_* (1 + y L_{alpha_i}) - id, localized:
    (T gamma)|_w = ((1 + y e) gamma_w - (e + y) gamma_{ws}) / (1 - e) - gamma_w.
    """
    R = _any_ring(column)
    y = R.gen("y")
    out = {}
    for w, g in column.items():
        e = _e(R, w.act(w.datum.alpha(i)))
        out[w] = ((1 + y * e) * g - (e + y) * column[w.rmul(i)]) / (1 - e) - g
    return out


def left_act(column: Column, v: WeylElem) -> Column:
    """(v^L gamma)|_u = v(gamma|_{v^{-1} u})."""
    vinv = v.inverse()
    return {u: weyl_act(v, column[vinv * u]) for u in column}


def _dl_left(column: Column, i: int, sign: int) -> Column:
    R = _any_ring(column)
    y = R.gen("y")
    some = next(iter(column))
    datum = some.datum
    e = _e(R, tuple(sign * a for a in datum.alpha(i)))
    c1 = (1 + y * e) / (1 - e)
    c2 = (1 + y) / (1 - e)
    moved = left_act(column, datum.s(i))
    return {u: c1 * moved[u] - c2 * column[u] for u in column}


def dl_left(column: Column, i: int) -> Column:
    """T_i^L = (1 + y e^{-alpha_i})/(1 - e^{-alpha_i}) s_i^L - (1 + y)/(1 - e^{-alpha_i})."""
    return _dl_left(column, i, -1)


def dl_left_dual(column: Column, i: int) -> Column:
    """T_i^{L,vee}: the same with e^{alpha_i} in place of e^{-alpha_i}."""
    return _dl_left(column, i, 1)


def apply_to_table(table: LocTable, label, op: Callable[[Column, int], Column], i: int) -> LocTable:
    """Return a table holding op_i applied to one labelled column."""
    out = LocTable(table.datum, table.ring)
    out[label] = op(table[label], i)
    return out


# ---------------------------------------------------------------------------
# duals and pairing
# ---------------------------------------------------------------------------

def pairing(datum: RootDatum, phi: Column, psi: Column, ring: Ring | None = None) -> RatFun:
    """<phi, psi> = sum_z phi|_z psi|_z / prod_{alpha>0}(1 - e^{z alpha})."""
    R = _ring(datum, ring)
    total = R.zero()
    for z in datum.elements():
        if phi[z] and psi[z]:
            total = total + phi[z] * psi[z] / lefschetz(datum, z, R)
    return total


def mc_dual_column(datum: RootDatum, u: WeylElem, ring: Ring | None = None) -> Column:
    """
    MC~_y(Y(u)°) by inverting SMC(Y(w)°) = sum_{u >= w} R_{w,u}(-y) MC~(Y(u)°),
    working down from the top element.
    """
    R = _ring(datum, ring)
    cache = datum.caches.setdefault("mc_dual", {})
    key = (u, R.names)
    hit = cache.get(key)
    if hit is not None:
        return hit
    col = dict(smc_column(datum, u, R))
    for w in datum.elements():
        if w != u and bruhat_leq(u, w):
            coeff = rpoly_at_minus_y(r_poly(u, w), R)
            other = mc_dual_column(datum, w, R)
            for z in col:
                if other[z]:
                    col[z] = col[z] - coeff * other[z]
    cache[key] = col
    return col


def mc_dual_restrict(u: WeylElem, z: WeylElem, ring: Ring | None = None) -> RatFun:
    return mc_dual_column(u.datum, u, ring)[z]


# ---------------------------------------------------------------------------
# AJS-Billey
# ---------------------------------------------------------------------------

def ajs_billey(u: WeylElem, w: WeylElem, word: Sequence[int] | None = None):
    """
    [Y(u)]|_w as a polynomial in the simple roots a1..ar, summed over
    reduced u-subwords of a reduced word of w.

    >>> from smcloc.coxeter import RootDatum
    >>> D = RootDatum.parse("A2")
    >>> str(ajs_billey(D.s(1), D.longest()))
    'a1 + a2'
    """
    datum = w.datum
    return subword_sum(datum, tuple(word) if word is not None else w.word, u, ajs_scheme(datum))


def ajs_recursion(u: WeylElem, w: WeylElem):
    """
    [Y(u)]|_w from the recursion over right descents: for ws > w,
    [Y(u)]|_{ws} = [Y(u)]|_w + w(alpha)[Y(us)]|_w if us < u, else [Y(u)]|_w.
    Uses the largest right descent at each step.
    """
    datum = w.datum
    ctx = simple_root_ctx(datum)
    cache = datum.caches.setdefault("ajs_rec", {})
    key = (u, w)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if w.length == 0:
        res = ctx.from_dict({(0,) * datum.rank: 1} if u.length == 0 else {})
    else:
        i = max(j for j in w.simple_indices if w.has_right_descent(j))
        wp = w.rmul(i)
        res = ajs_recursion(u, wp)
        if u.has_right_descent(i):
            res = res + root_as_poly(datum, wp.act(datum.alpha(i))) * ajs_recursion(u.rmul(i), wp)
    cache[key] = res
    return res


def smc0_lowest_degree(u: WeylElem, w: WeylElem):
    """
    Lowest homogeneous part of SMC_0(Y(u)°)|_w after expanding
    e^beta = 1 + beta + beta^2/2 + ... up to degree l(w), as a polynomial
    in the simple roots with rational coefficients.
    """
    datum = w.datum
    R = datum.ring("y")
    f = smc_y_restrict(u, w, R).specialize("y", 0)
    r = datum.rank
    qctx = flint.fmpq_mpoly_ctx.get(tuple(f"a{i + 1}" for i in range(r)), "lex")
    if f.is_zero():
        return qctx.from_dict({})
    den = int_terms(f.den)
    if len(den) != 1:
        raise ValueError("SMC_0 value is not a Laurent polynomial")
    (dexp, dc), = den.items()
    top = max(w.length, 1)
    slots = [k for k, n in enumerate(R.names) if n != "y"]
    total = qctx.from_dict({})
    for exp, c in int_terms(f.num).items():
        diff = [exp[k] - dexp[k] for k in slots]
        coords = lattice_coordinates(datum.simple_roots, diff)
        lin = qctx.from_dict({tuple(int(k == j) for k in range(r)): v
                              for j, v in enumerate(coords) if v})
        term = qctx.from_dict({(0,) * r: 1})
        power = qctx.from_dict({(0,) * r: 1})
        for m in range(1, top + 1):
            power = power * lin
            term = term + power * flint.fmpq(1, factorial(m))
        total = total + term * flint.fmpq(c, dc)
    terms = total.to_dict()
    degrees = [sum(e) for e in terms if sum(e) <= top]
    if not degrees:
        return qctx.from_dict({})
    low = min(degrees)
    return qctx.from_dict({e: c for e, c in terms.items() if sum(e) == low})


def poly_terms(p) -> dict[tuple[int, ...], Fraction]:
    """Exact term dictionary of a flint polynomial over Z or Q, for comparisons."""
    out = {}
    for e, c in p.to_dict().items():
        c = flint.fmpq(c)
        out[tuple(int(k) for k in e)] = Fraction(int(c.p), int(c.q))
    return out


# ---------------------------------------------------------------------------
# chamber limits
# ---------------------------------------------------------------------------

def limit_to_rpoly(u: WeylElem, w: WeylElem) -> RatFun:
    """lim_{e^{alpha_i} -> 0} prefactor(w) * SMC_y(Y(u)°)|_w; equals R_{u,w}(-y)."""
    datum = w.datum
    return limit_at_chamber(prefactor(datum, w) * smc_y_restrict(u, w), datum.identity)


def limit_to_twisted(u: WeylElem, v: WeylElem, w: WeylElem) -> RatFun:
    """lim_{e^{v alpha_i} -> 0} prefactor(w) * SMC_y(Y(u)°)|_w; equals R^{(v)}_{v^-1 u, v^-1 w}(-y)."""
    datum = w.datum
    return limit_at_chamber(prefactor(datum, w) * smc_y_restrict(u, w), v)
