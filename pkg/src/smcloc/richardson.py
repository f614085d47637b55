"""
Open Richardson and open projected Richardson classes on G/B and G/P.

MC_y of the open Richardson variety R_{u,w} is the pointwise product
MC_y(X(w)°) * SMC_y(Y(u)°).  Pushing forward along G/B -> G/P is the
fibrewise Lefschetz sum

    (pi_* F)|_{zP} = sum_{v in z W_P} F|_v / prod_{alpha in R_P^+} (1 - e^{v alpha}),

and the Segre version on G/P divides by
lambda_y(T^*(G/P))|_{zP} = prod_{alpha in R^+ minus R_P^+} (1 + y e^{z alpha}).

Fixed points of G/P are indexed by the minimal coset representatives W^P.
The parabolic comes from a dominant cocharacter lam via
P = {i : <lam, alpha_i> = 0}.

>>> from smcloc.coxeter import RootDatum
>>> par = Parabolic.of(RootDatum.parse("GL2"), (1, 0))
>>> f = par.group.translation((1, 0))
>>> str(smc_projected_restrict(f, par.datum.identity, par))
'(-t1 + t2)/(y*t1 + t2)'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .coxeter import RootDatum, WeylElem
from .extaffine import ExtAffineElem, ExtAffineGroup, make_f, split_f, stabilizer_indices
from .locfinite import Column, mc_x_restrict, smc_y_restrict, weyl_act
from .ring import RatFun, Ring, char_eval

__all__ = [
    "Parabolic", "ProjLocTable",
    "mc_richardson_restrict", "mc_richardson_column", "pushforward_to_P",
    "mc_projected_column", "smc_projected_restrict", "smc_projected_column",
    "lhs_main_restrict", "normal_factor", "left_act_P", "deodhar_case",
    "Residual", "rec_mc_richardson", "pushforward_not_minimal", "rec_mc_projected",
    "rec_smc_projected", "descent_correspondence",
]


@dataclass(frozen=True)
class Parabolic:
    """A dominant cocharacter together with its parabolic subgroup data."""

    datum: RootDatum
    lam: tuple[int, ...]
    indices: frozenset[int] = field(compare=False)

    @classmethod
    def of(cls, datum: RootDatum, lam: Sequence[int]) -> Parabolic:
        lam = tuple(int(x) for x in lam)
        if len(lam) != datum.dim:
            raise ValueError(f"cocharacter {lam} does not have {datum.dim} entries")
        if any(RootDatum.pair(lam, a) < 0 for a in datum.simple_roots):
            raise ValueError(f"cocharacter {lam} is not dominant")
        return cls(datum, lam, stabilizer_indices(datum, lam))

    @cached_property
    def ring(self) -> Ring:
        return self.datum.ring("y")

    @cached_property
    def group(self) -> ExtAffineGroup:
        return ExtAffineGroup.parse(self.datum.name)

    @cached_property
    def reps(self) -> list[WeylElem]:
        """W^P, sorted by (length, word)."""
        return self.datum.minimal_coset_reps(self.indices)

    @cached_property
    def levi(self) -> list[WeylElem]:
        """W_P."""
        return self.datum.parabolic_subgroup(self.indices)

    @cached_property
    def levi_roots(self) -> tuple:
        """R_P^+."""
        D = self.datum
        return tuple(a for a in D.positive_roots
                     if all(c == 0 or j + 1 in self.indices for j, c in enumerate(D.alpha_coords[a])))

    @cached_property
    def unipotent_roots(self) -> tuple:
        """R^+ minus R_P^+."""
        return tuple(a for a in self.datum.positive_roots if a not in self.levi_roots)

    def rep(self, v: WeylElem) -> WeylElem:
        """Minimal representative of v W_P."""
        cache = self.datum.caches.setdefault(("coset_rep", self.indices), {})
        hit = cache.get(v)
        if hit is None:
            w = v
            while True:
                j = next((j for j in sorted(self.indices) if w.has_right_descent(j)), None)
                if j is None:
                    break
                w = w.rmul(j)
            hit = cache[v] = w
        return hit

    def is_rep(self, w: WeylElem) -> bool:
        return all(not w.has_right_descent(j) for j in self.indices)

    def lambda_y(self, z: WeylElem) -> RatFun:
        R = self.ring
        y = R.gen("y")
        out = R.one()
        for a in self.unipotent_roots:
            out = out * (1 + y * char_eval(R, z.act(a)))
        return out

    def pairs(self) -> list[tuple[WeylElem, WeylElem]]:
        """All (u, w) with u in W and w in W^P."""
        return [(u, w) for w in self.reps for u in self.datum.elements()]

    def f(self, u: WeylElem, w: WeylElem) -> ExtAffineElem:
        return make_f(u, w, self.lam)


@dataclass
class ProjLocTable:
    """Restrictions to the fixed points of G/P, keyed by f then by a W^P element."""

    parabolic: Parabolic
    values: dict[ExtAffineElem, Column] = field(default_factory=dict)

    def add(self, f: ExtAffineElem) -> Column:
        col = smc_projected_column(f, self.parabolic)
        self.values[f] = col
        return col

    def rows(self) -> list[tuple[ExtAffineElem, WeylElem, RatFun]]:
        return [(f, z, v) for f, col in self.values.items() for z, v in col.items()]


# ---------------------------------------------------------------------------
# G/B side
# ---------------------------------------------------------------------------

def mc_richardson_restrict(u: WeylElem, w: WeylElem, z: WeylElem, ring: Ring | None = None) -> RatFun:
    """MC_y(R_{u,w})|_z = MC_y(X(w)°)|_z * SMC_y(Y(u)°)|_z."""
    a = mc_x_restrict(w, z, ring)
    if a.is_zero():
        return a
    return a * smc_y_restrict(u, z, ring)


def mc_richardson_column(datum: RootDatum, u: WeylElem, w: WeylElem, ring: Ring | None = None) -> Column:
    return {z: mc_richardson_restrict(u, w, z, ring) for z in datum.elements()}


# ---------------------------------------------------------------------------
# pushforward and G/P classes
# ---------------------------------------------------------------------------

def pushforward_to_P(column: Column, par: Parabolic) -> Column:
    """Fibrewise Lefschetz sum from a column over W to a column over W^P."""
    R = par.ring
    out = {}
    for z in par.reps:
        total = R.zero()
        for x in par.levi:
            v = z * x
            val = column[v]
            if val.is_zero():
                continue
            den = R.one()
            for a in par.levi_roots:
                den = den * (1 - char_eval(R, v.act(a)))
            total = total + val / den
        out[z] = total
    return out


def mc_projected_column(par: Parabolic, u: WeylElem, w: WeylElem) -> Column:
    """MC_y(Pi_{u,w}) = pi_* MC_y(R_{u,w}), memoized."""
    cache = par.datum.caches.setdefault(("mc_projected", par.lam), {})
    key = (u, w)
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = pushforward_to_P(mc_richardson_column(par.datum, u, w, par.ring), par)
    return hit


def smc_projected_column(f: ExtAffineElem, par: Parabolic) -> Column:
    """SMC_y(Pi_f) over W^P; raises NotInImage when f is not u t_lam w^{-1}."""
    u, w = split_f(f, par.lam)
    mc = mc_projected_column(par, u, w)
    return {z: (mc[z] / par.lambda_y(z) if mc[z] else mc[z]) for z in par.reps}


def smc_projected_restrict(f: ExtAffineElem, z: WeylElem, par: Parabolic) -> RatFun:
    if not par.is_rep(z):
        z = par.rep(z)
    return smc_projected_column(f, par)[z]


def normal_factor(par: Parabolic, v: WeylElem) -> RatFun:
    """
    lambda_{-1}(N^*)/lambda_y(N^*) at the fixed point t_{v lam}: the product
    over alpha > 0 with m = <lam, alpha> > 0 of ((1 - e^{v alpha})/(1 + y e^{v alpha}))^(m - 1).
    """
    R = par.ring
    y = R.gen("y")
    out = R.one()
    for a in par.datum.positive_roots:
        m = RootDatum.pair(par.lam, a)
        if m > 1:
            e = char_eval(R, v.act(a))
            out = out * ((1 - e) / (1 + y * e)) ** (m - 1)
    return out


def lhs_main_restrict(f: ExtAffineElem, v: WeylElem, par: Parabolic) -> RatFun:
    """Restriction at t_{v lam} of the pushforward of SMC_y(Pi_f)/lambda_y(N^*) into Gr_lam."""
    val = smc_projected_restrict(f, v, par)
    if val.is_zero():
        return val
    return val * normal_factor(par, v)


def left_act_P(column: Column, v: WeylElem, par: Parabolic) -> Column:
    """(v^L gamma)|_{zP} = v(gamma|_{v^{-1} z P})."""
    vinv = v.inverse()
    return {z: weyl_act(v, column[par.rep(vinv * z)]) for z in column}


def deodhar_case(par: Parabolic, i: int, w: WeylElem) -> tuple[int, int | None]:
    """
    For w in W^P: 1 if s_i w < w, 2 if s_i w > w lies in W^P, and
    (3, j) if s_i w = w s_j with s_j in W_P.
    """
    sw = w.lmul(i)
    if w.has_left_descent(i):
        return (1, None)
    if par.is_rep(sw):
        return (2, None)
    for j in sorted(par.indices):
        if sw == w.rmul(j):
            return (3, j)
    raise AssertionError("Deodhar trichotomy violated")


# ---------------------------------------------------------------------------
# recursions as table identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Residual:
    """One instance of a recursion identity; `ok` iff LHS - RHS vanishes at every fixed point."""

    name: str
    case: int
    labels: tuple
    ok: bool


def _lin(*terms: tuple[RatFun, Column]) -> Column:
    keys = terms[0][1].keys()
    return {z: sum((c * col[z] for c, col in terms), next(iter(terms))[0].ring.zero()) for z in keys}


def _is_zero(col: Column) -> bool:
    return all(v.is_zero() for v in col.values())


def _weights(ring: Ring, datum: RootDatum, i: int):
    y = ring.gen("y")
    em = char_eval(ring, tuple(-a for a in datum.alpha(i)))
    return y, em, 1 - em


def rec_mc_richardson(datum: RootDatum) -> list[Residual]:
    """The four-case left recursion for MC_y(R_{u,w}) on G/B, for all u, w, i."""
    from .locfinite import left_act
    R = datum.ring("y")
    cols = {(u, w): mc_richardson_column(datum, u, w, R)
            for u in datum.elements() for w in datum.elements()}
    out = []
    for i in range(1, datum.rank + 1):
        s = datum.s(i)
        y, em, d = _weights(R, datum, i)
        for (u, w), F in cols.items():
            sF = left_act(F, s)
            sFsu = left_act(cols[(u.lmul(i), w)], s)
            Fsw = cols[(u, w.lmul(i))]
            up_w, up_u = not w.has_left_descent(i), not u.has_left_descent(i)
            if up_w and up_u:
                case, res = 1, _lin(((1 + y) * em, sF), (-(1 + y), F), (-y * d, sFsu), (-d, Fsw))
            elif up_w:
                case, res = 2, _lin((1 + y, sF), (-(1 + y), F), (-d, Fsw), (d, sFsu))
            elif up_u:
                case, res = 3, _lin(((1 + y) * em, sF), (-(1 + y) * em, F), (-y * d, sFsu), (y * d, Fsw))
            else:
                case, res = 4, _lin((1 + y, sF), (-(1 + y) * em, F), (d, sFsu), (y * d, Fsw))
            out.append(Residual("mc_richardson", case, (u, w, i), _is_zero(res)))
    return out


def pushforward_not_minimal(par: Parabolic) -> list[Residual]:
    """pi_* MC_y(R_{u, w s_j}) against MC_y(Pi) for w in W^P, s_j in W_P."""
    y = par.ring.gen("y")
    out = []
    for u, w in par.pairs():
        for j in sorted(par.indices):
            lhs = pushforward_to_P(mc_richardson_column(par.datum, u, w.rmul(j), par.ring), par)
            us = u.rmul(j)
            if u.has_right_descent(j):
                case, res = 1, _lin((par.ring.one(), lhs), (-par.ring.one(), mc_projected_column(par, us, w)))
            else:
                case, res = 2, _lin((par.ring.one(), lhs), (1 + y, mc_projected_column(par, u, w)),
                                    (y, mc_projected_column(par, us, w)))
            out.append(Residual("pushforward_not_minimal", case, (u, w, j), _is_zero(res)))
    return out


def rec_mc_projected(par: Parabolic) -> list[Residual]:
    """The eight-case left recursion for MC_y(Pi_{u,w}), u in W, w in W^P."""
    D, R = par.datum, par.ring
    out = []
    for i in range(1, D.rank + 1):
        s = D.s(i)
        y, em, d = _weights(R, D, i)
        for u, w in par.pairs():
            F = mc_projected_column(par, u, w)
            sF = left_act_P(F, s, par)
            sFsu = left_act_P(mc_projected_column(par, u.lmul(i), w), s, par)
            kind, j = deodhar_case(par, i, w)
            up_u = not u.has_left_descent(i)
            if kind == 1:
                G = mc_projected_column(par, u, w.lmul(i))
                if up_u:
                    case, res = 7, _lin(((1 + y) * em, sF), (-(1 + y) * em, F), (-y * d, sFsu), (y * d, G))
                else:
                    case, res = 8, _lin((1 + y, sF), (-(1 + y) * em, F), (d, sFsu), (y * d, G))
            elif kind == 2:
                G = mc_projected_column(par, u, w.lmul(i))
                if up_u:
                    case, res = 1, _lin(((1 + y) * em, sF), (-(1 + y), F), (-y * d, sFsu), (-d, G))
                else:
                    case, res = 4, _lin((1 + y, sF), (-(1 + y), F), (-d, G), (d, sFsu))
            else:
                G = mc_projected_column(par, u.rmul(j), w)
                down_j = u.has_right_descent(j)
                if up_u and down_j:
                    case, res = 2, _lin(((1 + y) * em, sF), (-(1 + y), F), (-y * d, sFsu), (-d, G))
                elif up_u:
                    case, res = 3, _lin(((1 + y) * em, sF), (-(1 + y) * em, F), (-y * d, sFsu), (y * d, G))
                elif down_j:
                    case, res = 5, _lin((1 + y, sF), (-(1 + y), F), (-d, G), (d, sFsu))
                else:
                    case, res = 6, _lin((1 + y, sF), (-(1 + y) * em, F), (y * d, G), (d, sFsu))
            out.append(Residual("mc_projected", case, (u, w, i), _is_zero(res)))
    return out


def rec_smc_projected(par: Parabolic) -> list[Residual]:
    """The four-case recursion for SMC_y(Pi_f) in terms of s_i f and f s_i."""
    D, R = par.datum, par.ring
    out = []
    for i in range(1, D.rank + 1):
        s = D.s(i)
        y, em, d = _weights(R, D, i)
        for u, w in par.pairs():
            f = par.f(u, w)
            F = smc_projected_column(f, par)
            sF = left_act_P(F, s, par)
            sFs = left_act_P(smc_projected_column(f.lmul(i), par), s, par)
            Fs = smc_projected_column(f.rmul(i), par)
            left_down, right_down = f.has_left_descent(i), f.has_right_descent(i)
            if left_down and right_down:
                case, res = 1, _lin((1 + y, sF), (-(1 + y), F), (-d, Fs), (d, sFs))
            elif left_down:
                case, res = 2, _lin((1 + y, sF), (-(1 + y) * em, F), (d, sFs), (y * d, Fs))
            elif right_down:
                case, res = 3, _lin(((1 + y) * em, sF), (-(1 + y), F), (-y * d, sFs), (-d, Fs))
            else:
                case, res = 4, _lin(((1 + y) * em, sF), (-(1 + y) * em, F), (-y * d, sFs), (y * d, Fs))
            out.append(Residual("smc_projected", case, (f, i), _is_zero(res)))
    return out


def descent_correspondence(par: Parabolic) -> list[Residual]:
    """Left/right descents of f = u t_lam w^{-1} read off from (u, w)."""
    out = []
    for i in range(1, par.datum.rank + 1):
        for u, w in par.pairs():
            f = par.f(u, w)
            kind, j = deodhar_case(par, i, w)
            ok = f.has_left_descent(i) == u.has_left_descent(i)
            if kind == 1:
                ok = ok and not f.has_right_descent(i)
            elif kind == 2:
                ok = ok and f.has_right_descent(i)
            else:
                ok = ok and f.has_right_descent(i) == u.has_right_descent(j)
                ok = ok and f.rmul(i) == par.f(u.rmul(j), w)
            out.append(Residual("descents", kind, (u, w, i), ok))
    return out
