"""Exact arithmetic in a real embedded number field Q(a).

A :class:`FieldSpec` fixes a monic irreducible polynomial and a rational
interval isolating one of its real roots ``a``. Elements are stored as
rational coordinates over the power basis ``1, a, ..., a^(d-1)``. Signs are
decided exactly: a symbolic zero test, then a floating-point filter with a
conservative error bound, then interval bisection of the root.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import sympy

from .errors import FieldMismatch, Reducible, RootNotIsolated

__all__ = [
    "FieldSpec",
    "FieldElement",
    "field_make",
    "QQ",
    "elem_sign",
    "rational_dependence",
    "parse_rational",
    "rref",
    "nullspace",
]


def parse_rational(text: str) -> Fraction:
    """Parse ``3``, ``-1.25``, ``7/5`` or ``7:5`` as an exact rational."""
    t = text.strip()
    if ":" in t:
        num, _, den = t.partition(":")
        return Fraction(int(num), int(den))
    return Fraction(t)


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _imul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


class _RootCache:
    """Progressively refined isolating interval; shared, not compared."""

    def __init__(self, minpoly, lo, hi):
        self.minpoly = minpoly
        self.lo = lo
        self.hi = hi
        self.sign_lo = _sign(_poly_eval(minpoly, lo))
        self.lock = threading.Lock()
        self.floats = None

    def refine_to(self, width: Fraction) -> tuple[Fraction, Fraction]:
        with self.lock:
            lo, hi = self.lo, self.hi
            while hi - lo > width:
                mid = (lo + hi) / 2
                s = _sign(_poly_eval(self.minpoly, mid))
                if s == 0:
                    # only reachable in degree 1
                    lo = hi = mid
                    break
                if s == self.sign_lo:
                    lo = mid
                else:
                    hi = mid
            self.lo, self.hi = lo, hi
            return lo, hi


def _sign(q) -> int:
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class FieldSpec:
    """A real number field Q(a) with a chosen embedding.

    ``minpoly`` holds the coefficients low-to-high, the leading 1 included.
    """

    minpoly: tuple[Fraction, ...]
    lo: Fraction
    hi: Fraction
    _cache: _RootCache = field(compare=False, repr=False, hash=False, default=None)

    def __post_init__(self):
        if self._cache is None:
            object.__setattr__(self, "_cache", _RootCache(self.minpoly, self.lo, self.hi))
        d = self.degree
        # x^k for d <= k <= 2d-2 over the power basis
        table = []
        cur = [-c for c in self.minpoly[:d]]
        for _ in range(max(d - 1, 0)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.minpoly[i]
        object.__setattr__(self, "_reduce", tuple(table))

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __call__(self, value) -> FieldElement:
        return self.coerce(value)

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, (int, Rational)):
            return self.element([Fraction(value)])
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, coords: Iterable) -> FieldElement:
        cs = [Fraction(c) for c in coords]
        d = self.degree
        if len(cs) > d:
            raise ValueError(f"expected at most {d} coordinates, got {len(cs)}")
        cs += [Fraction(0)] * (d - len(cs))
        return FieldElement(self, tuple(cs))

    def zero(self) -> FieldElement:
        return self.element([])

    def one(self) -> FieldElement:
        return self.element([1])

    def gen(self) -> FieldElement:
        """The generator ``a``; in rational mode this is the rational root."""
        if self.degree == 1:
            return self.element([-self.minpoly[0]])
        return self.element([0, 1])

    def parse(self, text: str) -> FieldElement:
        """Parse a ``/``-separated coordinate tuple, or a plain rational."""
        t = text.strip()
        if self.degree == 1 or "/" not in t:
            return self.coerce(parse_rational(t))
        parts = t.split("/")
        if len(parts) != self.degree:
            raise ValueError(
                f"expected {self.degree} '/'-separated coordinates in {text!r} "
                "(write fractions inside a tuple as p:q)"
            )
        return self.element([parse_rational(p) for p in parts])

    def format(self, x: FieldElement) -> str:
        if self.degree == 1:
            return _fmt_q(x.coords[0], sep="/")
        return "/".join(_fmt_q(c, sep=":") for c in x.coords)

    def header(self) -> str:
        d = self.degree
        cs = " ".join(_fmt_q(c, "/") for c in self.minpoly[:d])
        return f"field {d} {cs} {_fmt_q(self.lo, '/')} {_fmt_q(self.hi, '/')}"

    def root_interval(self, width) -> tuple[Fraction, Fraction]:
        return self._cache.refine_to(Fraction(width))

    def _float_powers(self):
        c = self._cache
        if c.floats is None:
            lo, hi = self.root_interval(Fraction(1, 2**80))
            a = (lo + hi) / 2
            c.floats = tuple(float(a**i) for i in range(self.degree))
        return c.floats


def _fmt_q(q: Fraction, sep: str) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}{sep}{q.denominator}"


def field_make(minpoly: Sequence, root_interval: tuple) -> FieldSpec:
    """Validate and build a field.

    ``minpoly`` is given low-to-high and must be monic.
    """
    coeffs = tuple(Fraction(c) for c in minpoly)
    if len(coeffs) < 2:
        raise ValueError("minimal polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    lo, hi = (Fraction(v) for v in root_interval)
    if not lo < hi:
        raise ValueError("root interval must satisfy lo < hi")
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    if len(coeffs) > 2 and not poly.is_irreducible:
        raise Reducible(f"{poly.as_expr()} factors over the rationals")
    if _poly_eval(coeffs, lo) == 0 or _poly_eval(coeffs, hi) == 0:
        raise RootNotIsolated("interval endpoint is a root")
    n = poly.count_roots(sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator))
    if n != 1:
        raise RootNotIsolated(f"interval ({lo}, {hi}) contains {n} real roots")
    return FieldSpec(coeffs, lo, hi)


QQ = field_make([0, 1], (-1, 1))


class FieldElement:
    """Immutable element of a :class:`FieldSpec`."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: FieldSpec, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords
        self._hash = None

    # -- coercion helpers
    def _other(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("cannot combine elements of different fields")
            return other
        if isinstance(other, (int, Rational)):
            return self.field.element([Fraction(other)])
        return None

    # -- ring operations
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            q = Fraction(other)
            return FieldElement(self.field, tuple(a * q for a in self.coords))
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (self.coords[0] * o.coords[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for k, c in enumerate(prod[d:]):
            if c:
                row = self.field._reduce[k]
                for i in range(d):
                    out[i] += c * row[i]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (1 / self.coords[0],))
        # columns: self * a^j
        cols = []
        basis_j = self
        gen = self.field.element([0, 1])
        for _ in range(d):
            cols.append(basis_j.coords)
            basis_j = basis_j * gen
        aug = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        rows, pivots = rref(aug)
        sol = [Fraction(0)] * d
        for r, pc in enumerate(pivots):
            sol[pc] = rows[r][d]
        return FieldElement(self.field, tuple(sol))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElement(self.field, tuple(a / q for a in self.coords))
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons
    def is_zero(self) -> bool:
        return not any(self.coords)

    def sign(self) -> int:
        return elem_sign(self)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Rational)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coords[1:]):
                self._hash = hash(self.coords[0])
            else:
                self._hash = hash(self.coords)
        return self._hash

    def _cmp(self, other) -> int:
        o = self._other(other)
        if o is None:
            raise TypeError(f"cannot compare with {other!r}")
        return elem_sign(self - o)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if elem_sign(self) < 0 else self

    def __bool__(self):
        return not self.is_zero()

    # -- conversions
    def is_rational(self) -> bool:
        return self.field.degree == 1 or not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        if self.field.degree == 1:
            return self.coords[0]
        return self.coords[0]

    def enclosure(self, width=Fraction(1, 2**40)) -> tuple[Fraction, Fraction]:
        """Rational interval containing the real value, of width <= ``width`` when possible."""
        if self.field.degree == 1 or not any(self.coords[1:]):
            v = self.coords[0]
            return v, v
        w = Fraction(width)
        scale = sum(abs(c) for c in self.coords) + 1
        root_w = w / (scale * self.field.degree * 4 * (abs(self.field.hi) + abs(self.field.lo) + 2) ** self.field.degree)
        lo, hi = self.field.root_interval(root_w)
        return _interval_eval(self.coords, lo, hi)

    def floor(self) -> int:
        lo, hi = self.enclosure(Fraction(1, 4))
        n = math.floor(lo)
        while True:
            if self >= n + 1:
                n += 1
            elif self < n:
                n -= 1
            else:
                return n

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    def approx(self, digits: int = 12) -> str:
        """Decimal string with ``digits`` significant digits (display only)."""
        if self.is_zero():
            return "0"
        lo, hi = self.enclosure(Fraction(1, 10 ** (digits + 20)))
        mid = (lo + hi) / 2
        with localcontext() as ctx:
            ctx.prec = digits + 25
            dec = Decimal(mid.numerator) / Decimal(mid.denominator)
            s = format(dec, f".{digits}g")
        if "e" in s or "E" in s:
            return s
        if "." in s:
            s = s.rstrip("0").rstrip(".")
        return s

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        return format_element(self)


def format_element(x: FieldElement, name: str = "a") -> str:
    """Human readable exact form, e.g. ``1/2 + 3*a^2``."""
    if x.field.degree == 1:
        return str(x.coords[0])
    terms = []
    for i, c in enumerate(x.coords):
        if not c:
            continue
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        if i == 0:
            t = str(abs(c))
        elif abs(c) == 1:
            t = mono
        else:
            t = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", t))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sg, t in terms[1:]:
        s += f" {sg} {t}"
    return s


def _interval_eval(coords, lo, hi):
    # Horner on the interval [lo, hi]
    acc = (coords[-1], coords[-1])
    x = (lo, hi)
    for c in reversed(coords[:-1]):
        acc = _imul(acc, x)
        acc = (acc[0] + c, acc[1] + c)
    return acc


def elem_sign(x: FieldElement) -> int:
    """Exact sign (-1, 0, 1) of the real embedding of ``x``."""
    cs = x.coords
    if not any(cs):
        return 0
    fld = x.field
    if fld.degree == 1 or not any(cs[1:]):
        return _sign(cs[0])
    try:
        pw = fld._float_powers()
        terms = [float(c) * p for c, p in zip(cs, pw)]
        val = math.fsum(terms)
        bound = 1e-12 * sum(abs(t) for t in terms) + 1e-300
        if abs(val) > bound:
            return 1 if val > 0 else -1
    except OverflowError:
        pass
    width = Fraction(1, 2**64)
    while True:
        lo, hi = fld.root_interval(width)
        vlo, vhi = _interval_eval(cs, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        width /= 2**32


# -- rational linear algebra -------------------------------------------------

def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _primitive_int(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    first = next((v for v in ints if v), 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def nullspace(columns: Sequence[Sequence[Fraction]]) -> tuple[int, list[tuple[int, ...]]]:
    """Rank and an integral basis of the rational relations among ``columns``.

    Each column is a vector in Q^m; a relation is an integer vector ``r`` with
    ``sum(r[j] * columns[j]) == 0``.
    """
    n = len(columns)
    m = len(columns[0]) if n else 0
    rows = [[Fraction(columns[j][i]) for j in range(n)] for i in range(m)]
    red, pivots = rref(rows)
    free = [j for j in range(n) if j not in pivots]
    rels = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][f]
        rels.append(_primitive_int(vec))
    return len(pivots), rels


def rational_dependence(xs: Sequence[FieldElement]) -> tuple[int, list[tuple[int, ...]]]:
    """Q-rank of ``xs`` and a basis of the integer relations among them."""
    if not xs:
        raise ValueError("rational_dependence needs at least one element")
    fld = xs[0].field
    for x in xs[1:]:
        if x.field != fld:
            raise FieldMismatch("elements from different fields")
    return nullspace([x.coords for x in xs])
