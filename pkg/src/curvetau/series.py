"""Exact truncated Laurent series over the rationals and bivariate polynomials.

A :class:`TruncatedSeries` is a Laurent series in one variable ``t`` known
exactly below its truncation order ``trunc``; nothing is assumed about the
coefficients at or above ``trunc``.  Truncations propagate conservatively.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class _ZeroToPrecision:
    """Marker returned by :func:`order` when every tracked coefficient vanishes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO_TO_PRECISION"

    def __reduce__(self):
        return (_ZeroToPrecision, ())


ZERO_TO_PRECISION = _ZeroToPrecision()


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum(coeffs[k] * t**(offset + k)) + O(t**trunc)``.

    Stored normalized: when the series is nonzero ``coeffs[0] != 0`` and so
    ``offset`` is the order; a zero-to-precision series has ``offset == trunc``
    and no coefficients.
    """

    offset: int
    coeffs: tuple
    trunc: int

    def __post_init__(self):
        if self.offset + len(self.coeffs) != self.trunc:
            raise ValueError("coefficients must cover offset..trunc-1")

    @classmethod
    def from_terms(cls, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]], trunc: int) -> "TruncatedSeries":
        """Build from ``{exponent: coefficient}``; exponents >= trunc are dropped."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            if e < trunc:
                acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        nz = [e for e, c in acc.items() if c != 0]
        if not nz:
            return cls.zero(trunc)
        lo = min(nz)
        return cls(lo, tuple(acc.get(e, Fraction(0)) for e in range(lo, trunc)), trunc)

    @classmethod
    def from_dense(cls, offset: int, coeffs: Iterable[Scalar], trunc: int | None = None) -> "TruncatedSeries":
        coeffs = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = offset + len(coeffs)
        coeffs = coeffs[: max(0, trunc - offset)]
        coeffs += [Fraction(0)] * (trunc - offset - len(coeffs))
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k == len(coeffs):
            return cls.zero(trunc)
        return cls(offset + k, tuple(coeffs[k:]), trunc)

    @classmethod
    def zero(cls, trunc: int) -> "TruncatedSeries":
        return cls(trunc, (), trunc)

    @classmethod
    def constant(cls, c: Scalar, trunc: int) -> "TruncatedSeries":
        return cls.from_terms({0: c}, trunc)

    @classmethod
    def monomial(cls, c: Scalar, e: int, trunc: int) -> "TruncatedSeries":
        return cls.from_terms({e: c}, trunc)

    # -- queries ---------------------------------------------------------
    @property
    def is_zero_to_precision(self) -> bool:
        return not self.coeffs

    @property
    def order(self):
        """First exponent with a nonzero coefficient, or ``ZERO_TO_PRECISION``."""
        return ZERO_TO_PRECISION if not self.coeffs else self.offset

    @property
    def _val(self) -> int:
        # lower bound for the true order; the truncation for a vanishing series
        return self.offset

    def __getitem__(self, e: int) -> Fraction:
        if e >= self.trunc:
            raise IndexError(f"coefficient of t^{e} is beyond truncation {self.trunc}")
        if e < self.offset:
            return Fraction(0)
        return self.coeffs[e - self.offset]

    def terms(self) -> dict[int, Fraction]:
        return {self.offset + k: c for k, c in enumerate(self.coeffs) if c != 0}

    def truncate(self, trunc: int) -> "TruncatedSeries":
        if trunc > self.trunc:
            raise ValueError("cannot raise the truncation of a series")
        return TruncatedSeries.from_terms(self.terms(), trunc)

    def coefficients(self, lo: int, hi: int) -> list[Fraction]:
        """Dense coefficient list for exponents ``lo..hi-1`` (needs ``hi <= trunc``)."""
        if hi > self.trunc:
            raise IndexError(f"need coefficients below {hi}, known below {self.trunc}")
        out = [Fraction(0)] * (hi - lo)
        for k, c in enumerate(self.coeffs):
            e = self.offset + k
            if e >= hi:
                break
            if e >= lo:
                out[e - lo] = c
            elif c != 0:
                raise ValueError(f"series has a nonzero coefficient at t^{e} below {lo}")
        return out

    # -- arithmetic ------------------------------------------------------
    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.offset, tuple(-c for c in self.coeffs), self.trunc)

    def __add__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self + TruncatedSeries.constant(other, self.trunc)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        acc: dict[int, Fraction] = {}
        for s in (self, other):
            for k, c in enumerate(s.coeffs):
                e = s.offset + k
                if e >= t:
                    break
                acc[e] = acc.get(e, Fraction(0)) + c
        return TruncatedSeries.from_terms(acc, t)

    __radd__ = __add__

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def scale(self, c: Scalar) -> "TruncatedSeries":
        c = Fraction(c)
        if c == 0:
            return TruncatedSeries.zero(self.trunc)
        return TruncatedSeries(self.offset, tuple(c * a for a in self.coeffs), self.trunc)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = min(self.trunc + other._val, other.trunc + self._val)
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries.zero(t)
        base = self.offset + other.offset
        n = t - base
        out = [Fraction(0)] * max(n, 0)
        a, b = self.coeffs, other.coeffs
        for i, ai in enumerate(a):
            if i >= n:
                break
            if ai == 0:
                continue
            lim = min(len(b), n - i)
            for j in range(lim):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncatedSeries.from_dense(base, out, t)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse as a Laurent series (relative precision kept)."""
        if not self.coeffs:
            raise ZeroDivisionError("series is zero to precision")
        n = len(self.coeffs)
        a = self.coeffs
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, n):
            s = sum((a[j] * b[k - j] for j in range(1, k + 1)), Fraction(0))
            b.append(-s * inv0)
        return TruncatedSeries.from_dense(-self.offset, b, -self.offset + n)

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            return TruncatedSeries.constant(1, max(self.trunc - self._val, 1))
        return result

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*t^{e}" for e, c in self.terms().items()) or "0"
        return f"TruncatedSeries({body} + O(t^{self.trunc}))"


def add(s: TruncatedSeries, u: TruncatedSeries) -> TruncatedSeries:
    return s + u


def mul(s: TruncatedSeries, u: TruncatedSeries) -> TruncatedSeries:
    return s * u


def order(s: TruncatedSeries):
    return s.order


@dataclass(frozen=True)
class BivariatePoly:
    """Sparse polynomial in ``X, Y`` with rational coefficients.

    ``terms`` is a sorted tuple of ``((a, b), coefficient)`` for ``X^a Y^b``
    with no zero coefficients, so instances hash and compare structurally.
    """

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: Mapping[tuple[int, int], Scalar]) -> "BivariatePoly":
        items = []
        for (a, b), c in d.items():
            if a < 0 or b < 0:
                raise ValueError("negative exponent in polynomial")
            c = Fraction(c)
            if c != 0:
                items.append(((int(a), int(b)), c))
        return cls(tuple(sorted(items)))

    @classmethod
    def const(cls, c: Scalar) -> "BivariatePoly":
        return cls.from_dict({(0, 0): c})

    @classmethod
    def X(cls) -> "BivariatePoly":
        return cls.from_dict({(1, 0): 1})

    @classmethod
    def Y(cls) -> "BivariatePoly":
        return cls.from_dict({(0, 1): 1})

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((a + b for (a, b), _ in self.terms), default=-1)

    @property
    def low_degree(self) -> int:
        """Smallest total degree of a monomial (the order at the origin)."""
        return min((a + b for (a, b), _ in self.terms), default=-1)

    def __add__(self, other) -> "BivariatePoly":
        if isinstance(other, (int, Fraction)):
            other = BivariatePoly.const(other)
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) + c
        return BivariatePoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other) -> "BivariatePoly":
        if isinstance(other, (int, Fraction)):
            other = BivariatePoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "BivariatePoly":
        return (-self) + other

    def __mul__(self, other) -> "BivariatePoly":
        if isinstance(other, (int, Fraction)):
            return BivariatePoly.from_dict({m: c * other for m, c in self.terms})
        d: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms:
            for (a2, b2), c2 in other.terms:
                m = (a1 + a2, b1 + b2)
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return BivariatePoly.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BivariatePoly":
        out = BivariatePoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def diff_x(self) -> "BivariatePoly":
        return BivariatePoly.from_dict({(a - 1, b): a * c for (a, b), c in self.terms if a > 0})

    def diff_y(self) -> "BivariatePoly":
        return BivariatePoly.from_dict({(a, b - 1): b * c for (a, b), c in self.terms if b > 0})

    def shift(self, a: int, b: int) -> "BivariatePoly":
        """Multiply by the monomial ``X^a Y^b``."""
        return BivariatePoly(tuple(((x + a, y + b), c) for (x, y), c in self.terms))

    def divides(self, other: "BivariatePoly") -> bool:
        """Exact divisibility test ``self | other`` in ``Q[X, Y]``.

        Division by a single polynomial: its remainder under any monomial
        order vanishes iff ``self`` divides ``other``.
        """
        if self.is_zero():
            return other.is_zero()

        def key(m):
            return (m[0] + m[1], m[1])  # graded, ties broken by Y-degree

        lead = max(self.as_dict(), key=key)
        lc = self.as_dict()[lead]
        rem = other.as_dict()
        while rem:
            m = max(rem, key=key)
            if m[0] < lead[0] or m[1] < lead[1]:
                return False
            q = rem[m] / lc
            da, db = m[0] - lead[0], m[1] - lead[1]
            for (a, b), c in self.terms:
                t = (a + da, b + db)
                v = rem.get(t, Fraction(0)) - q * c
                if v == 0:
                    rem.pop(t, None)
                else:
                    rem[t] = v
        return True

    def __repr__(self) -> str:
        return f"BivariatePoly({format_poly(self)!r})"


def format_poly(p: BivariatePoly) -> str:
    """Render in the sparse-monomial grammar accepted by :func:`curvetau.document.parse_poly`."""
    if p.is_zero():
        return "0"
    parts = []
    for (a, b), c in sorted(p.terms, key=lambda t: (t[0][0] + t[0][1], t[0][1])):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = []
        if a:
            factors.append("X" if a == 1 else f"X^{a}")
        if b:
            factors.append("Y" if b == 1 else f"Y^{b}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append((sign, "*".join(factors)))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def eval_poly(p: BivariatePoly, x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Substitute ``X = x(t), Y = y(t)`` into ``p`` (Horner in ``Y`` then ``X``).

    Both series must have positive order (or vanish to precision).
    """
    for name, s in (("x", x), ("y", y)):
        if s.coeffs and s.offset < 1:
            raise ValueError(f"parametrization {name} must have positive order, got {s.offset}")
    by_x: dict[int, dict[int, Fraction]] = {}
    for (a, b), c in p.terms:
        by_x.setdefault(a, {})[b] = c
    if not by_x:
        return TruncatedSeries.zero(min(x.trunc, y.trunc))

    def horner(coeffs: dict[int, Fraction], var: TruncatedSeries):
        # coeffs maps exponent -> (scalar | series); result is scalar or series
        top = max(coeffs)
        acc = coeffs.get(top, 0)
        for e in range(top - 1, -1, -1):
            acc = acc * var if isinstance(acc, TruncatedSeries) else (
                var.scale(acc) if acc else TruncatedSeries.zero(var.trunc))
            c = coeffs.get(e)
            if c is not None:
                acc = acc + c
        return acc

    inner = {a: horner(bs, y) for a, bs in by_x.items()}
    out = horner(inner, x)
    if not isinstance(out, TruncatedSeries):
        out = TruncatedSeries.constant(out, min(x.trunc, y.trunc))
    return out


def exponent_gcd(*series: TruncatedSeries) -> int:
    g = 0
    for s in series:
        for e in s.terms():
            g = gcd(g, e)
    return g
