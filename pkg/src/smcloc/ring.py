"""
Exact Laurent polynomials and rational functions with integer coefficients.

`RatFun` values live in a `Ring` of named generators (torus characters
``t1..tn``, optionally pipe-dream variables ``x1..xk``, and the parameter
``y`` or ``q``).  Laurent monomials are absorbed into the denominator, so a
value is always a reduced quotient of two honest polynomials.

>>> R = Ring.get(("t1", "t2", "y"))
>>> t1, t2, y = R.gens()
>>> f = (t1 - t2) / (t1 + y * t2)
>>> str(f)
'(t1 - t2)/(t1 + y*t2)'
>>> str(f * (t1 + y * t2))
't1 - t2'
>>> str(R.monomial((1, -1, 0)))
'(t1)/(t2)'
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint

__all__ = [
    "LaurentPoly", "Ring", "RatFun", "LimitDiverges",
    "char_eval", "chamber_limit", "limit_at_chamber", "lattice_coordinates",
]

# generators printed first inside a monomial, so that `y*t2` reads naturally
_PARAMETERS = ("q", "y")


def int_terms(poly) -> dict[tuple[int, ...], int]:
    """Terms of a flint polynomial with plain int exponents and coefficients."""
    return {tuple(int(k) for k in e): int(c) for e, c in poly.to_dict().items()}


class LimitDiverges(ArithmeticError):
    """An iterated chamber limit does not exist (denominator vanishes faster)."""


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """
    Sparse Laurent polynomial in `nvars` variables with integer coefficients.

    Terms are kept sorted in descending lexicographic exponent order and zero
    coefficients are never stored, so equal polynomials have identical term
    tuples.

    >>> p = LaurentPoly.from_coeffs([1, -3, 4, -3, 1])
    >>> p.coefficients()
    [1, -3, 4, -3, 1]
    >>> (p.bar() * LaurentPoly.monomial((4,))) == p
    True
    """

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None, nvars: int = 1):
        clean = {}
        for exp, c in (terms or {}).items():
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} slots")
            if c:
                clean[tuple(exp)] = int(c)
        self._terms = tuple(sorted(clean.items(), reverse=True))
        self.nvars = nvars
        self._hash = None

    @classmethod
    def constant(cls, c: int, nvars: int = 1) -> LaurentPoly:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], c: int = 1) -> LaurentPoly:
        return cls({tuple(exp): c}, len(exp))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], low: int = 0) -> LaurentPoly:
        """Univariate polynomial from ascending coefficients starting at degree `low`."""
        return cls({(low + k,): c for k, c in enumerate(coeffs)}, 1)

    @property
    def terms(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        return self._terms

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: LaurentPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError("Laurent polynomials in different numbers of variables")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self._terms
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient")
            return LaurentPoly({tuple(-k * n for k in e): c ** (-n)}, self.nvars)
        out = LaurentPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self._terms))
        return self._hash

    def bar(self) -> LaurentPoly:
        """Invert every variable (the bar involution q -> 1/q)."""
        return LaurentPoly({tuple(-k for k in e): c for e, c in self._terms}, self.nvars)

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial with exponent `exp`."""
        return LaurentPoly(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms}, self.nvars)

    def negate_variable(self, k: int) -> LaurentPoly:
        """Substitute x_k -> -x_k (with q -> -y this realises R(-y))."""
        return LaurentPoly({e: c * (-1) ** (e[k] % 2) for e, c in self._terms}, self.nvars)

    def degree(self) -> int:
        """Top total degree (univariate: top power)."""
        if not self._terms:
            raise ValueError("degree of zero")
        return max(sum(e) for e, _ in self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of zero")
        return min(sum(e) for e, _ in self._terms)

    def coefficients(self) -> list[int]:
        """Ascending coefficient list of a univariate polynomial with no negative powers."""
        if self.nvars != 1:
            raise ValueError("coefficients() needs a univariate polynomial")
        if not self._terms:
            return [0]
        if self.valuation() < 0:
            raise ValueError("polynomial has negative powers")
        out = [0] * (self.degree() + 1)
        for (k,), c in self._terms:
            out[k] = c
        return out

    def __repr__(self) -> str:
        if self.nvars == 1:
            return f"LaurentPoly({dict((e[0], c) for e, c in self._terms)})"
        return f"LaurentPoly({dict(self._terms)}, nvars={self.nvars})"

    def to_ratfun(self, ring: Ring, images: Sequence[Sequence[int]], sign: Sequence[int] | None = None) -> RatFun:
        """
        Map into `ring` sending variable k to the Laurent monomial with exponent
        vector images[k], times sign[k].  Used for q -> -y.
        """
        out = ring.zero()
        for e, c in self._terms:
            coeff = c
            if sign is not None:
                for k, s in zip(e, sign):
                    coeff *= s ** abs(k)
            exp = [0] * ring.nvars
            for k, power in enumerate(e):
                for j, a in enumerate(images[k]):
                    exp[j] += power * a
            out = out + ring.monomial(exp, coeff)
        return out


# ---------------------------------------------------------------------------
# Rings and rational functions
# ---------------------------------------------------------------------------

class Ring:
    """A polynomial ring Z[gens] with lex order in generator order."""

    _cache: dict[tuple[str, ...], Ring] = {}

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.ctx = flint.fmpz_mpoly_ctx.get(self.names, "lex")
        self.index = {n: i for i, n in enumerate(self.names)}
        # print order inside a monomial: parameters first, then generator order
        params = [i for i, n in enumerate(self.names) if n in _PARAMETERS]
        self._print_order = params + [i for i in range(self.nvars) if i not in params]
        self._one = self.ctx.from_dict({(0,) * self.nvars: 1})

    @classmethod
    def get(cls, names: Iterable[str]) -> Ring:
        names = tuple(names)
        ring = cls._cache.get(names)
        if ring is None:
            ring = cls._cache[names] = cls(names)
        return ring

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.names)})"

    def __reduce__(self):
        return (Ring.get, (self.names,))

    def poly(self, terms: Mapping[tuple[int, ...], int]):
        return self.ctx.from_dict(dict(terms))

    def zero(self) -> RatFun:
        return RatFun._raw(self, self.ctx.from_dict({}), self._one)

    def one(self) -> RatFun:
        return RatFun._raw(self, self._one, self._one)

    def const(self, c: int | Fraction) -> RatFun:
        c = Fraction(c)
        return RatFun(self, self.poly({(0,) * self.nvars: c.numerator}),
                      self.poly({(0,) * self.nvars: c.denominator}))

    def gen(self, name: str) -> RatFun:
        exp = [0] * self.nvars
        exp[self.index[name]] = 1
        return self.monomial(exp)

    def gens(self) -> tuple[RatFun, ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exp: Sequence[int], coeff: int = 1) -> RatFun:
        """The Laurent monomial coeff * prod g_i^exp_i."""
        if len(exp) != self.nvars:
            raise ValueError(f"exponent {tuple(exp)} has wrong length for {self}")
        num = tuple(max(e, 0) for e in exp)
        den = tuple(max(-e, 0) for e in exp)
        if coeff == 0:
            return self.zero()
        return RatFun._raw(self, self.poly({num: coeff}), self.poly({den: 1}))

    def from_dicts(self, num: Mapping, den: Mapping) -> RatFun:
        """Quotient of two Laurent polynomials given as exponent dictionaries."""
        shift = [0] * self.nvars
        for d in (num, den):
            for e in d:
                for i, k in enumerate(e):
                    if k < shift[i]:
                        shift[i] = k
        def fix(d):
            return self.poly({tuple(k - s for k, s in zip(e, shift)): c for e, c in d.items() if c})
        return RatFun(self, fix(num), fix(den))


class RatFun:
    """
    Reduced quotient of two polynomials in a `Ring`.

    The pair (numerator, denominator) is coprime and the denominator's
    lex-leading coefficient is positive, so equality is identity of normal
    forms.
    """

    __slots__ = ("ring", "num", "den", "_hash")

    def __init__(self, ring: Ring, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.ring = ring
        if num.is_zero():
            self.num, self.den = num, ring._one
        else:
            g = num.gcd(den)
            if g != ring._one:
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
            self.num, self.den = num, den
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, num, den) -> RatFun:
        # caller guarantees normal form
        out = cls.__new__(cls)
        out.ring, out.num, out.den, out._hash = ring, num, den, None
        return out

    def __reduce__(self):
        return (_ratfun_from_dicts, (self.ring.names, int_terms(self.num), int_terms(self.den)))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> RatFun:
        if isinstance(other, RatFun):
            if other.ring is not self.ring:
                raise ValueError(f"mixing {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFun(self.ring, self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        a = other.den / g
        b = self.den / g
        return RatFun(self.ring, self.num * a + other.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun._raw(self.ring, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return self.ring.zero()
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFun._raw(self.ring, num, den)

    __rmul__ = __mul__

    def inverse(self) -> RatFun:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFun._raw(self.ring, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> RatFun:
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun._raw(self.ring, self.num ** n, self.den ** n)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        if other.ring is not self.ring:
            return False
        return self.num == other.num and self.den == other.den

    def equals_by_cross_multiplication(self, other: RatFun) -> bool:
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.names,
                               tuple(sorted(int_terms(self.num).items())),
                               tuple(sorted(int_terms(self.den).items()))))
        return self._hash

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- views --------------------------------------------------------------

    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly(int_terms(self.num), self.ring.nvars)

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly(int_terms(self.den), self.ring.nvars)

    def is_polynomial(self) -> bool:
        return self.den == self.ring._one

    def __str__(self) -> str:
        if self.is_polynomial():
            return _poly_text(self.ring, self.num)
        return f"({_poly_text(self.ring, self.num)})/({_poly_text(self.ring, self.den)})"

    def __repr__(self) -> str:
        return f"RatFun({self})"

    # -- substitutions ------------------------------------------------------

    def monomial_map(self, target: Ring, images: Sequence[Sequence[int]]) -> RatFun:
        """
        Substitute generator k by the Laurent monomial of `target` with
        exponent vector images[k].  Exponents transform linearly, so this
        covers Weyl group actions on characters and x -> t substitutions.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("one image per generator required")
        def image(poly):
            out: dict[tuple[int, ...], int] = {}
            for e, c in int_terms(poly).items():
                new = [0] * target.nvars
                for k, power in enumerate(e):
                    if power:
                        for j, a in enumerate(images[k]):
                            new[j] += power * a
                key = tuple(new)
                out[key] = out.get(key, 0) + c
            return out
        return target.from_dicts(image(self.num), image(self.den))

    def specialize(self, name: str, value: int) -> RatFun:
        """Set one generator to an integer value."""
        k = self.ring.index[name]
        def sub(poly):
            out: dict[tuple[int, ...], int] = {}
            for e, c in int_terms(poly).items():
                if value == 0 and e[k]:
                    continue
                key = e[:k] + (0,) + e[k + 1:]
                out[key] = out.get(key, 0) + c * value ** e[k]
            return self.ring.poly(out)
        den = sub(self.den)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at {name}={value}")
        return RatFun(self.ring, sub(self.num), den)


def _ratfun_from_dicts(names, num, den) -> RatFun:
    ring = Ring.get(names)
    return RatFun(ring, ring.poly(num), ring.poly(den))


def _poly_text(ring: Ring, poly) -> str:
    terms = int_terms(poly)
    if not terms:
        return "0"
    parts = []
    for exp in sorted(terms, reverse=True):
        c = int(terms[exp])
        factors = []
        for i in ring._print_order:
            k = exp[i]
            if k == 1:
                factors.append(ring.names[i])
            elif k:
                factors.append(f"{ring.names[i]}^{k}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# characters and chamber limits
# ---------------------------------------------------------------------------

def char_eval(ring: Ring, weight: Sequence[int]) -> RatFun:
    """
    e^weight as a Laurent monomial in the first len(weight) generators.

    >>> R = Ring.get(("t1", "t2", "t3", "y"))
    >>> str(char_eval(R, (1, 0, -1)))
    '(t1)/(t3)'
    """
    nchar = sum(1 for n in ring.names if n not in _PARAMETERS)
    if len(weight) != nchar:
        raise ValueError(f"weight {tuple(weight)} does not match character rank {nchar}")
    exp = [0] * ring.nvars
    j = 0
    for i, n in enumerate(ring.names):
        if n not in _PARAMETERS:
            exp[i] = weight[j]
            j += 1
    return ring.monomial(exp)


def lattice_coordinates(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> tuple[int, ...]:
    """
    Integer coordinates c with sum c_i basis[i] == vec.

    Raises ValueError when vec is not an integral combination.

    >>> lattice_coordinates([(1, -1, 0), (0, 1, -1)], (1, 0, -1))
    (1, 1)
    """
    r, d = len(basis), len(vec)
    # augmented d x (r+1) system, Gaussian elimination over Q
    rows = [[Fraction(basis[j][i]) for j in range(r)] + [Fraction(vec[i])] for i in range(d)]
    pivots = []
    row = 0
    for col in range(r):
        piv = next((i for i in range(row, d) if rows[i][col] != 0), None)
        if piv is None:
            raise ValueError("basis is not linearly independent")
        rows[row], rows[piv] = rows[piv], rows[row]
        p = rows[row][col]
        rows[row] = [x / p for x in rows[row]]
        for i in range(d):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
    for i in range(row, d):
        if rows[i][r] != 0:
            raise ValueError(f"{tuple(vec)} is not in the span of the basis")
    coords = [rows[i][r] for i in range(r)]
    if any(c.denominator != 1 for c in coords):
        raise ValueError(f"{tuple(vec)} is not an integral combination of the basis")
    return tuple(int(c) for c in coords)


def chamber_limit(f: RatFun, basis: Sequence[Sequence[int]], order: Sequence[int] | None = None) -> RatFun:
    """
    Iterated limit of f as z_i = e^{basis[i]} -> 0, one coordinate at a time.

    `basis` lists character vectors (over the non-parameter generators of
    f.ring).  The result is a function of the parameters only.  Raises
    LimitDiverges when a step has a pole.
    """
    ring = f.ring
    if f.is_zero():
        return ring.zero()
    char_slots = [i for i, n in enumerate(ring.names) if n not in _PARAMETERS]
    param_slots = [i for i, n in enumerate(ring.names) if n in _PARAMETERS]
    num = int_terms(f.num)
    den = int_terms(f.den)
    ref_exp = max(den)
    ref = [ref_exp[i] for i in char_slots]

    def to_z(d):
        out = {}
        for e, c in d.items():
            diff = [e[i] - r for i, r in zip(char_slots, ref)]
            z = lattice_coordinates(basis, diff)
            key = (z, tuple(e[i] for i in param_slots))
            out[key] = out.get(key, 0) + c
        return out

    N, D = to_z(num), to_z(den)
    steps = list(order) if order is not None else list(range(len(basis)))
    if sorted(steps) != list(range(len(basis))):
        raise ValueError("order must be a permutation of the coordinate indices")
    for j in steps:
        if not N:
            return ring.zero()
        mN = min(z[j] for z, _ in N)
        mD = min(z[j] for z, _ in D)
        if mN > mD:
            return ring.zero()
        if mN < mD:
            raise LimitDiverges(f"pole of order {mD - mN} along coordinate {j + 1}")
        N = {k: c for k, c in N.items() if k[0][j] == mN}
        D = {k: c for k, c in D.items() if k[0][j] == mD}
    # only the parameter exponents remain
    def back(d):
        out = {}
        for (_, p), c in d.items():
            e = [0] * ring.nvars
            for slot, k in zip(param_slots, p):
                e[slot] = k
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return out
    return ring.from_dicts(back(N), back(D))


def limit_at_chamber(f: RatFun, v, order: Sequence[int] | None = None) -> RatFun:
    """
    lim f as e^{v alpha_i} -> 0 for every simple root alpha_i.

    `v` is a Weyl group element (anything with `.datum` and `.act`).
    """
    datum = v.datum
    basis = [v.act(a) for a in datum.simple_roots]
    return chamber_limit(f, basis, order)
