"""
Iwahori-Hecke algebra and Kazhdan-Lusztig R-polynomials.

The algebra is generic over the group: anything with `length`,
`has_left_descent` / `has_right_descent`, `lmul` / `rmul` by simple
indices, `inverse()`, `*` and `factorization()` works, which covers both
finite Weyl groups and the extended affine Weyl group.

Quadratic relation (T_s + 1)(T_s - q) = 0, so
T_x T_s = T_{xs} if xs > x and (q - 1) T_x + q T_{xs} otherwise.

>>> from smcloc.coxeter import RootDatum
>>> D = RootDatum.parse("A2")
>>> r_poly(D.identity, D.longest()).coefficients()
[-1, 2, -2, 1]
>>> r_poly_def(D.identity, D.longest()) == r_poly(D.identity, D.longest())
True
"""

from __future__ import annotations

from typing import Any, Iterable

from .coxeter import bruhat_leq
from .ring import LaurentPoly

__all__ = ["HeckeElem", "Q", "r_poly", "r_poly_def", "twisted_r", "t_inverse"]

ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial((1,))
QINV = LaurentPoly.monomial((-1,))


class HeckeElem:
    """
    Sparse sum of c_x T_x with c_x Laurent polynomials in q.

    >>> from smcloc.coxeter import RootDatum
    >>> D = RootDatum.parse("A1")
    >>> T = HeckeElem.basis(D.s(1))
    >>> ((T + 1) * (T - Q * HeckeElem.basis(D.identity))).is_zero()
    True
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[Any, LaurentPoly] | None = None):
        self.coeffs = {x: c for x, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, x) -> HeckeElem:
        return cls({x: ONE})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, x) -> LaurentPoly:
        return self.coeffs.get(x, LaurentPoly())

    def _unit(self):
        # identity of the group, taken from any stored key
        x = next(iter(self.coeffs))
        return x.owner.identity

    def __add__(self, other) -> HeckeElem:
        if isinstance(other, int):
            if not self.coeffs:
                raise ValueError("cannot infer the group of an empty Hecke element")
            other = HeckeElem({self._unit(): LaurentPoly.constant(other)})
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out[x] + c if x in out else c
        return HeckeElem(out)

    __radd__ = __add__

    def __neg__(self) -> HeckeElem:
        return HeckeElem({x: -c for x, c in self.coeffs.items()})

    def __sub__(self, other) -> HeckeElem:
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def scale(self, c: LaurentPoly) -> HeckeElem:
        return HeckeElem({x: c * v for x, v in self.coeffs.items()})

    def __rmul__(self, c) -> HeckeElem:
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c))
        return NotImplemented

    # -- multiplication by generators ---------------------------------------

    def rmul_simple(self, i: int) -> HeckeElem:
        """self * T_{s_i}."""
        out: dict[Any, LaurentPoly] = {}
        for x, c in self.coeffs.items():
            xs = x.rmul(i)
            if x.has_right_descent(i):
                _acc(out, x, (Q - 1) * c)
                _acc(out, xs, Q * c)
            else:
                _acc(out, xs, c)
        return HeckeElem(out)

    def lmul_simple(self, i: int) -> HeckeElem:
        """T_{s_i} * self."""
        out: dict[Any, LaurentPoly] = {}
        for x, c in self.coeffs.items():
            sx = x.lmul(i)
            if x.has_left_descent(i):
                _acc(out, x, (Q - 1) * c)
                _acc(out, sx, Q * c)
            else:
                _acc(out, sx, c)
        return HeckeElem(out)

    def rmul_simple_inverse(self, i: int) -> HeckeElem:
        """self * T_{s_i}^{-1}, using T_s^{-1} = q^{-1} T_s + (q^{-1} - 1)."""
        return self.rmul_simple(i).scale(QINV) + self.scale(QINV - 1)

    def rmul_length_zero(self, omega) -> HeckeElem:
        """self * T_omega for a length-0 element."""
        return HeckeElem({x * omega: c for x, c in self.coeffs.items()})

    def rmul_basis(self, w) -> HeckeElem:
        """self * T_w."""
        omega, word = w.factorization()
        out = self.rmul_length_zero(omega)
        for i in word:
            out = out.rmul_simple(i)
        return out

    def __mul__(self, other) -> HeckeElem:
        if isinstance(other, (int, LaurentPoly)):
            return other * self
        out = HeckeElem()
        for w, c in other.coeffs.items():
            out = out + self.rmul_basis(w).scale(c)
        return out

    def bar(self) -> HeckeElem:
        """sum a_w T_w  ->  sum bar(a_w) T_{w^{-1}}^{-1}."""
        out = HeckeElem()
        for w, c in self.coeffs.items():
            out = out + t_inverse(w.inverse()).scale(c.bar())
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElem):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        items = sorted(self.coeffs.items(), key=lambda kv: (kv[0].length, str(kv[0])))
        return " + ".join(f"({c!r})*T[{x}]" for x, c in items) or "0"


def _acc(out: dict, x, c: LaurentPoly) -> None:
    if x in out:
        out[x] = out[x] + c
    else:
        out[x] = c


def t_inverse(w) -> HeckeElem:
    """
    T_w^{-1} expanded in the standard basis (memoized per group).

    With w = omega s_{i_1} ... s_{i_m}, T_w^{-1} = T_{i_m}^{-1} ... T_{i_1}^{-1} T_{omega^{-1}}.
    """
    cache = w.owner.caches.setdefault("hecke_tinv", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    omega, word = w.factorization()
    h = HeckeElem.basis(w.owner.identity)
    for i in reversed(word):
        h = h.rmul_simple_inverse(i)
    h = h.rmul_length_zero(omega.inverse())
    cache[w] = h
    return h


def r_poly(u, w) -> LaurentPoly:
    """
    R_{u,w}(q) by the descent recursion, memoized.

    Pick s with sw < w.  Then R_{u,w} = R_{su,sw} if su < u and
    (q - 1) R_{su,w} + q R_{su,sw} otherwise; R vanishes unless u <= w.
    """
    cache = w.owner.caches.setdefault("rpoly", {})
    key = (u, w)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not bruhat_leq(u, w):
        res = LaurentPoly()
    elif u == w:
        res = ONE
    else:
        s = next(i for i in w.simple_indices if w.has_left_descent(i))
        sw, su = w.lmul(s), u.lmul(s)
        if u.has_left_descent(s):
            res = r_poly(su, sw)
        else:
            res = (Q - 1) * r_poly(su, w) + Q * r_poly(su, sw)
    cache[key] = res
    return res


def r_poly_def(u, w) -> LaurentPoly:
    """
    R_{u,w}(q) read off from T_{w^{-1}}^{-1} = sum_u bar(R_{u,w}) q^{-l(u)} T_u.
    """
    c = t_inverse(w.inverse())[u]
    return (c * LaurentPoly.monomial((u.length,))).bar()


def twisted_r(u, w, v) -> LaurentPoly:
    """
    Twisted R-polynomial R^{(v)}_{u,w}(q), read off from

        T_v T_{w^{-1}}^{-1} = q^{l(v)} sum_u R^{(v)}_{u,w}(q^{-1}) q^{-l(vu)} T_{vu}.

    >>> from smcloc.coxeter import RootDatum
    >>> D = RootDatum.parse("A2")
    >>> s1, s2 = D.s(1), D.s(2)
    >>> twisted_r(s2, s1 * s2, D.identity) == r_poly(s2, s1 * s2)
    True
    """
    cache = w.owner.caches.setdefault("twisted_rows", {})
    key = (w, v)
    row = cache.get(key)
    if row is None:
        omega_v, vword = v.factorization()
        row = HeckeElem.basis(w.owner.identity).rmul_length_zero(omega_v)
        for i in vword:
            row = row.rmul_simple(i)
        row = row * t_inverse(w.inverse())
        cache[key] = row
    vu = v * u
    c = row[vu]
    return (c * LaurentPoly.monomial((vu.length - v.length,))).bar()


def r_matrix(elements: Iterable) -> dict[tuple, LaurentPoly]:
    """All nonzero R_{u,w} over a finite list of elements."""
    elems = list(elements)
    return {(u, w): r_poly(u, w) for u in elems for w in elems if bruhat_leq(u, w)}
