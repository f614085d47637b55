"""
Periodic pipe dreams on k rows and their weighted sums.

A tiling assigns CROSS or ELBOW to each cell (i, j) of {1..k} x Z with
period n in j.  Row 1 is the top row.  Pipes enter at the bottom and only
move up or right: a CROSS passes both pipes straight through, an ELBOW
turns the pipe from below to the right and the pipe from the left upwards.
So a row with elbows at columns e_1 < e_2 < ... moves a pipe at e_m to
e_{m+1} and leaves every other column alone, and the reading permutation
is the composite of the row maps from bottom to top.

A pipe is labelled by its bottom column.  At every cell, `a` is the label
of the pipe entering from the left and `b` the label entering from below,
and the cell weight is

    ELBOW:  (1+y) x_i / (t_j + y x_i)  if a < b,  (1+y) t_j / (t_j + y x_i)  if a > b,
    CROSS:  (t_j - x_i) / (t_j + y x_i) if a < b,  -y (t_j - x_i) / (t_j + y x_i) if a > b.

>>> pd = PipeDream.from_rows(["++%++%+", "%%+%+%+", "+%%+%%+"])
>>> trace(pd)
(2, 6, 5, 10, 8, 11, 7)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .coxeter import RootDatum
from .extaffine import from_window, is_bounded
from .richardson import Parabolic, smc_projected_restrict
from .ring import RatFun, Ring

__all__ = [
    "CROSS", "ELBOW", "IllFormed", "PipeDream", "trace", "row_map", "enumerate_pd",
    "all_tilings", "tile_labels", "weight", "weight_numerator", "common_denominator",
    "gtilde", "pd_ring", "k1_closed_form", "k1_tiling", "swap_variables", "substitute", "fixed_point_subsets", "PositroidRow", "PositroidReport",
    "verify_positroid",
]

CROSS, ELBOW = 0, 1
GLYPH = {CROSS: "+", ELBOW: "%"}


class IllFormed(ValueError):
    """A tiling with a pipe that never comes from the bottom edge."""


@dataclass(frozen=True)
class PipeDream:
    """One period of a tiling: rows[i][j] for row i+1 (top first) and column j+1."""

    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[str | Sequence[int]]) -> PipeDream:
        parsed = []
        for r in rows:
            if isinstance(r, str):
                parsed.append(tuple(ELBOW if c == "%" else CROSS for c in r if c in "+%"))
            else:
                parsed.append(tuple(int(x) for x in r))
        if len({len(r) for r in parsed}) > 1:
            raise ValueError("rows of different lengths")
        return cls(tuple(parsed))

    @classmethod
    def from_mask(cls, mask: int, k: int, n: int) -> PipeDream:
        """Row-major bits, most significant first: bit 1 is ELBOW."""
        bits = [(mask >> (k * n - 1 - p)) & 1 for p in range(k * n)]
        return cls(tuple(tuple(bits[i * n:(i + 1) * n]) for i in range(k)))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def mask(self) -> int:
        out = 0
        for r in self.rows:
            for b in r:
                out = 2 * out + b
        return out

    def ascii(self) -> str:
        return "\n".join("".join(GLYPH[b] for b in r) for r in self.rows)

    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def row_map(row: Sequence[int]) -> list[int]:
    """phi(j) for j = 1..n: the column where a pipe entering row at j leaves it."""
    n = len(row)
    elbows = [j for j in range(1, n + 1) if row[j - 1] == ELBOW]
    out = []
    for j in range(1, n + 1):
        if row[j - 1] == CROSS:
            out.append(j)
        else:
            nxt = next((e for e in elbows if e > j), elbows[0] + n)
            out.append(nxt)
    return out


def _apply(window: Sequence[int], x: int) -> int:
    n = len(window)
    q, r = divmod(x - 1, n)
    return window[r] + q * n


def trace(pd: PipeDream) -> tuple[int, ...]:
    """Window [f(1), ..., f(n)] of the reading permutation."""
    n = pd.n
    pos = list(range(1, n + 1))
    for row in reversed(pd.rows):
        phi = row_map(row)
        pos = [_apply(phi, p) for p in pos]
    return tuple(pos)


def all_tilings(k: int, n: int) -> Iterator[PipeDream]:
    for mask in range(2 ** (k * n)):
        yield PipeDream.from_mask(mask, k, n)


def enumerate_pd(f: Sequence[int], k: int, n: int) -> list[PipeDream]:
    """
    Every tiling reading f, in increasing mask order.  Rows are chosen from
    the bottom up and a branch is cut once a pipe overshoots its target.
    """
    f = tuple(f)
    if len(f) != n:
        return []
    row_choices = [tuple((m >> (n - 1 - j)) & 1 for j in range(n)) for m in range(2 ** n)]
    maps = {r: row_map(r) for r in row_choices}
    found: list[tuple[tuple[int, ...], ...]] = []
    chosen: list[tuple[int, ...]] = []

    def rec(pos: list[int]):
        if len(chosen) == k:
            if tuple(pos) == f:
                found.append(tuple(reversed(chosen)))
            return
        for r in row_choices:
            new = [_apply(maps[r], p) for p in pos]
            if any(p > t for p, t in zip(new, f)):
                continue
            chosen.append(r)
            rec(new)
            chosen.pop()

    rec(list(range(1, n + 1)))
    return sorted((PipeDream(rows) for rows in found), key=PipeDream.mask)


def tile_labels(pd: PipeDream) -> list[list[tuple[int, int]]]:
    """(a, b) for every cell of the period; raises IllFormed on an all-CROSS row."""
    n = pd.n
    out: list[list[tuple[int, int]]] = [[] for _ in pd.rows]
    # label of the pipe sitting at the bottom edge of column j in the current row
    below = {j: j for j in range(1, n + 1)}

    def at(col: int) -> int:
        q, r = divmod(col - 1, n)
        return below[r + 1] + q * n

    for idx in range(pd.k - 1, -1, -1):
        row = pd.rows[idx]
        elbows = [j for j in range(1, n + 1) if row[j - 1] == ELBOW]
        if not elbows:
            raise IllFormed(f"row {idx + 1} has no elbow")
        cells = []
        for j in range(1, n + 1):
            prev = max((e for e in elbows if e < j), default=elbows[-1] - n)
            cells.append((at(prev), at(j)))
        out[idx] = cells
        phi = row_map(row)
        nxt = {}
        for j in range(1, n + 1):
            dest = phi[j - 1]
            q, r = divmod(dest - 1, n)
            nxt[r + 1] = at(j) - q * n
        below = nxt
    return out


def pd_ring(k: int, n: int) -> Ring:
    return Ring.get(tuple(f"t{j}" for j in range(1, n + 1)) + tuple(f"x{i}" for i in range(1, k + 1)) + ("y",))


def _cell_numerator(R: Ring, tile: int, i: int, j: int, a: int, b: int) -> RatFun:
    x, t, y = R.gen(f"x{i}"), R.gen(f"t{j}"), R.gen("y")
    if tile == ELBOW:
        return (1 + y) * x if a < b else (1 + y) * t
    return (t - x) if a < b else -y * (t - x)


def common_denominator(k: int, n: int, ring: Ring | None = None) -> RatFun:
    """prod over the period of t_j + y x_i, shared by every tiling."""
    R = ring if ring is not None else pd_ring(k, n)
    y = R.gen("y")
    out = R.one()
    for i in range(1, k + 1):
        for j in range(1, n + 1):
            out = out * (R.gen(f"t{j}") + y * R.gen(f"x{i}"))
    return out


def weight_numerator(pd: PipeDream, ring: Ring | None = None) -> RatFun:
    R = ring if ring is not None else pd_ring(pd.k, pd.n)
    labels = tile_labels(pd)
    out = R.one()
    for i, row in enumerate(pd.rows, start=1):
        for j, tile in enumerate(row, start=1):
            a, b = labels[i - 1][j - 1]
            out = out * _cell_numerator(R, tile, i, j, a, b)
    return out


def weight(pd: PipeDream, ring: Ring | None = None) -> RatFun:
    """Product of the cell weights over one period."""
    R = ring if ring is not None else pd_ring(pd.k, pd.n)
    return weight_numerator(pd, R) / common_denominator(pd.k, pd.n, R)


def gtilde(f: Sequence[int], k: int, n: int) -> RatFun:
    """Sum of weights over all tilings reading f."""
    R = pd_ring(k, n)
    total = R.zero()
    for pd in enumerate_pd(f, k, n):
        total = total + weight_numerator(pd, R)
    return total / common_denominator(k, n, R)


def k1_tiling(A: Sequence[int], n: int) -> PipeDream:
    """The single-row tiling with elbows exactly at A."""
    return PipeDream((tuple(ELBOW if j in set(A) else CROSS for j in range(1, n + 1)),))


def k1_closed_form(A: Sequence[int], n: int) -> RatFun:
    """prod_{j in A} (1+y)x/(t_j+yx) * prod_{j not in A} (t_j-x)/(t_j+yx)."""
    R = pd_ring(1, n)
    x, y = R.gen("x1"), R.gen("y")
    out = R.one()
    for j in range(1, n + 1):
        t = R.gen(f"t{j}")
        out = out * (((1 + y) * x if j in set(A) else t - x) / (t + y * x))
    return out


def swap_variables(g: RatFun, a: str, b: str) -> RatFun:
    """Exchange two generators of g's ring."""
    names = g.ring.names
    swap = {a: b, b: a}
    images = [tuple(int(m == names.index(swap.get(nm, nm))) for m in range(len(names))) for nm in names]
    return g.monomial_map(g.ring, images)


def substitute(g: RatFun, subset: Sequence[int], k: int, n: int, target: Ring) -> RatFun:
    """x_i -> t_{subset[i]}; t_j and y unchanged; result lives in `target` (t1..tn, y)."""
    images = []
    for name in g.ring.names:
        vec = [0] * target.nvars
        if name.startswith("x"):
            vec[target.index[f"t{subset[int(name[1:]) - 1]}"]] = 1
        else:
            vec[target.index[name]] = 1
        images.append(tuple(vec))
    return g.monomial_map(target, images)


def fixed_point_subsets(par: Parabolic) -> dict:
    """W^P element z -> the k-subset z({1..k}) of the torus fixed point zP."""
    n, k = par.datum.dim, sum(par.lam)
    out = {}
    for z in par.reps:
        S = []
        for i in range(k):
            img = z.act(tuple(int(c == i) for c in range(n)))
            S.append(img.index(1) + 1)
        out[z] = tuple(sorted(S))
    return out


@dataclass(frozen=True)
class PositroidRow:
    subset: tuple[int, ...]
    gtilde: RatFun
    smc: RatFun

    @property
    def equal(self) -> bool:
        return self.gtilde == self.smc


@dataclass
class PositroidReport:
    f: tuple[int, ...]
    k: int
    n: int
    rows: list[PositroidRow]
    symmetric: bool

    @property
    def passed(self) -> bool:
        return self.symmetric and all(r.equal for r in self.rows)


def verify_positroid(f: Sequence[int], k: int, n: int) -> PositroidReport:
    """
    Compare gtilde(f) at every fixed point of Gr_k(C^n) (x's replaced by the
    t's of the subset, in every order) with SMC_y(Pi_f) from the Richardson
    pipeline for GL_n and lam = (1^k, 0^{n-k}).
    """
    f = tuple(f)
    if not is_bounded(f, k):
        raise ValueError(f"{f} is not a bounded affine permutation with k={k}")
    datum = RootDatum.parse(f"GL{n}")
    par = Parabolic.of(datum, (1,) * k + (0,) * (n - k))
    elem = from_window(par.group, f)
    g = gtilde(f, k, n)
    subsets = fixed_point_subsets(par)
    rows, symmetric = [], True
    for z, S in sorted(subsets.items(), key=lambda kv: kv[1]):
        vals = {substitute(g, perm, k, n, par.ring) for perm in permutations(S)}
        symmetric = symmetric and len(vals) == 1
        rows.append(PositroidRow(S, substitute(g, S, k, n, par.ring),
                                 smc_projected_restrict(elem, z, par)))
    return PositroidReport(f, k, n, rows, symmetric)
