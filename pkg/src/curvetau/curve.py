"""Branches, curves and per-branch valuations."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import inf

from curvetau.boxes import ValueSetBox
from curvetau.errors import BranchNotOnCurve, NonPrimitive, NonReduced, PrecisionExhausted
from curvetau.linalg import echelon_form
from curvetau.series import BivariatePoly, TruncatedSeries, eval_poly, exponent_gcd

DEFAULT_PRECISION_CAP = 4096
_cap_setting = DEFAULT_PRECISION_CAP


def precision_cap() -> int:
    """The environment variable wins over :func:`set_precision_cap`."""
    env = os.environ.get("CURVETAU_PRECISION_CAP")
    return int(env) if env else _cap_setting


def set_precision_cap(value: int | None) -> None:
    global _cap_setting
    _cap_setting = DEFAULT_PRECISION_CAP if value is None else int(value)


def _terms(items) -> tuple:
    d: dict[int, Fraction] = {}
    for e, c in items:
        d[int(e)] = d.get(int(e), Fraction(0)) + Fraction(c)
    return tuple(sorted((e, c) for e, c in d.items() if c != 0))


@dataclass(frozen=True)
class Branch:
    """An irreducible branch: its defining polynomial and a parametrization.

    ``x_terms`` is an exact polynomial in ``t``.  ``y_terms`` agrees with a
    true parametrization below ``t^trunc``; ``trunc=None`` means the listed
    terms are exact.  Higher precision is obtained by Newton lifting ``y``.
    """

    poly: BivariatePoly
    x_terms: tuple
    y_terms: tuple
    trunc: int | None = None
    label: str = ""

    @classmethod
    def make(cls, poly, x, y, trunc=None, label="") -> "Branch":
        x = x.items() if isinstance(x, dict) else x
        y = y.items() if isinstance(y, dict) else y
        return cls(poly, _terms(x), _terms(y), trunc, label)

    @property
    def exact(self) -> bool:
        return self.trunc is None

    def param(self, precision: int) -> tuple[TruncatedSeries, TruncatedSeries]:
        """``(x(t), y(t))`` known below ``t^precision``."""
        if precision > precision_cap():
            raise PrecisionExhausted(f"precision {precision} exceeds cap {precision_cap()}")
        x = TruncatedSeries.from_terms(self.x_terms, precision)
        if self.exact or precision <= self.trunc:
            return x, TruncatedSeries.from_terms(self.y_terms, precision)
        return x, TruncatedSeries.from_terms(_lift_y(self, precision), precision)

    def orders(self) -> tuple:
        """Orders of ``x`` and ``y`` (``inf`` for an identically zero coordinate)."""
        ox = self.x_terms[0][0] if self.x_terms else inf
        oy = self.y_terms[0][0] if self.y_terms else inf
        return ox, oy

    @property
    def multiplicity(self) -> int:
        return min(self.orders())


@lru_cache(maxsize=None)
def _lift_y(branch: Branch, precision: int) -> tuple:
    """Newton-lift the ``y`` seed of ``branch`` so it is correct below ``t^precision``.

    With ``e = ord f_Y(x, y)`` and a seed correct to order ``p > e``, the
    residual ``f(x, y)`` has order exactly ``p + e``; each step roughly
    doubles ``p``.
    """
    f, fy = branch.poly, branch.poly.diff_y()
    seed_prec = branch.trunc
    y = dict(branch.y_terms)
    x0 = TruncatedSeries.from_terms(branch.x_terms, seed_prec)
    d = eval_poly(fy, x0, TruncatedSeries.from_terms(y, seed_prec))
    if d.is_zero_to_precision:
        raise PrecisionExhausted(
            f"ord f_Y on the branch is not visible below t^{seed_prec}; supply more terms")
    e = d.order
    need = precision + e
    x = TruncatedSeries.from_terms(branch.x_terms, need)
    for _ in range(200):
        ys = TruncatedSeries.from_terms(y, need)
        res = eval_poly(f, x, ys)
        if res.is_zero_to_precision or res.order >= need:
            return tuple(sorted((k, v) for k, v in y.items() if k < precision and v != 0))
        p = res.order - e
        if p <= e:
            raise PrecisionExhausted(f"seed agrees only to order {p}; need more than {e}")
        step = res / eval_poly(fy, x, ys)
        keep = min(2 * p - e, precision)
        y = {k: v for k, v in (ys - step.truncate(precision)).terms().items() if k < keep}
    raise PrecisionExhausted("Newton lifting did not converge")


@dataclass(frozen=True)
class Curve:
    branches: tuple

    def __post_init__(self):
        if not self.branches:
            raise ValueError("a curve needs at least one branch")
        object.__setattr__(self, "branches", tuple(self.branches))

    @property
    def r(self) -> int:
        return len(self.branches)

    @property
    def f(self) -> BivariatePoly:
        out = BivariatePoly.const(1)
        for b in self.branches:
            out = out * b.poly
        return out

    def product_of(self, idx) -> BivariatePoly:
        out = BivariatePoly.const(1)
        for k in idx:
            out = out * self.branches[k].poly
        return out

    def subcurve(self, idx) -> "Curve":
        return Curve(tuple(self.branches[k] for k in idx))

    def permuted(self, order) -> "Curve":
        return self.subcurve(order)


@dataclass(frozen=True)
class KElement:
    """Element of ``∏ Q((t_i))``: one truncated series per branch."""

    components: tuple

    @property
    def r(self) -> int:
        return len(self.components)

    def is_regular(self) -> bool:
        return all(not s.is_zero_to_precision for s in self.components)


@dataclass(frozen=True)
class AtLeast:
    """Valuation known only to be at least ``bound`` (the component vanished to precision)."""

    bound: int

    def __repr__(self) -> str:
        return f"≥{self.bound}"


@dataclass
class ValidationReport:
    r: int
    precision: int
    intersection: list = field(default_factory=list)
    multiplicities: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"r": self.r, "precision": self.precision,
                "intersection_matrix": self.intersection, "multiplicities": self.multiplicities}


def _check_param(b: Branch, k: int, precision: int):
    x, y = b.param(precision)
    for name, s in (("x", x), ("y", y)):
        if not s.is_zero_to_precision and s.order < 1:
            raise BranchNotOnCurve(f"branch {k}: {name}(t) has nonpositive order {s.order}")
    if x.is_zero_to_precision and y.is_zero_to_precision:
        raise BranchNotOnCurve(f"branch {k}: parametrization is identically zero")
    return x, y


def validate(curve: Curve, precision: int | None = None) -> ValidationReport:
    """Check every branch/curve invariant at ``precision``; report pairwise orders."""
    if precision is None:
        precision = default_precision(curve)
    params = []
    for k, b in enumerate(curve.branches):
        x, y = _check_param(b, k, precision)
        val = eval_poly(b.poly, x, y)
        if not val.is_zero_to_precision:
            raise BranchNotOnCurve(f"branch {k}: f_{k}(x, y) has order {val.order}, not zero to t^{val.trunc}")
        g = exponent_gcd(x, y)
        if g != 1:
            raise NonPrimitive(f"branch {k}: exponent gcd is {g}")
        params.append((x, y))
    n = curve.r
    mat = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = eval_poly(curve.branches[j].poly, *params[i])
            if s.is_zero_to_precision:
                raise NonReduced(f"f_{j} vanishes on branch {i} to precision {s.trunc}")
            mat[i][j] = s.order
    for i in range(n):
        for j in range(i + 1, n):
            if mat[i][j] != mat[j][i]:
                raise NonReduced(f"intersection multiplicity not symmetric for ({i}, {j}): "
                                 f"{mat[i][j]} vs {mat[j][i]}")
    return ValidationReport(n, precision, mat, [b.multiplicity for b in curve.branches])


def default_precision(curve: Curve) -> int:
    return 64


def lift(curve: Curve, p: BivariatePoly, precision) -> KElement:
    if isinstance(precision, int):
        precision = [precision] * curve.r
    return KElement(tuple(eval_poly(p, *b.param(P)) for b, P in zip(curve.branches, precision)))


def nu(curve: Curve, z: KElement) -> tuple:
    """Componentwise orders; vanishing components become :class:`AtLeast` sentinels."""
    return tuple(AtLeast(s.trunc) if s.is_zero_to_precision else s.order for s in z.components)


def order_on_branch(branch: Branch, p: BivariatePoly, start: int = 32):
    """``ν(p)`` along the branch; ``inf`` only when ``f_branch | p`` is certified exactly."""
    if p.is_zero() or branch.poly.divides(p):
        return inf
    P = start
    while True:
        s = eval_poly(p, *branch.param(min(P, precision_cap())))
        if not s.is_zero_to_precision:
            return s.order
        if P >= precision_cap():
            raise PrecisionExhausted(f"{p} vanishes on branch to precision {P} but is not a multiple of f")
        P *= 2


def nu_poly(curve: Curve, p: BivariatePoly) -> tuple:
    return tuple(order_on_branch(b, p) for b in curve.branches)


def intersection_multiplicity(curve: Curve, i: int, j: int) -> int:
    """``I(f_i, f_j) = ν_i(f_j)``, checked symmetric."""
    if i == j:
        raise ValueError("intersection multiplicity needs two distinct branches")
    bi, bj = curve.branches[i], curve.branches[j]
    a = order_on_branch(bi, bj.poly)
    b = order_on_branch(bj, bi.poly)
    if a == inf or b == inf:
        raise PrecisionExhausted(f"branches {i} and {j} share a component")
    if a != b:
        raise NonReduced(f"asymmetric intersection multiplicity {a} != {b}")
    return a


def intersection_matrix(curve: Curve) -> list:
    n = curve.r
    return [[None if i == j else intersection_multiplicity(curve, i, j) for j in range(n)]
            for i in range(n)]


def _weight(k, o):
    return k * o if k else 0


@lru_cache(maxsize=None)
def branch_semigroup_of(branch: Branch) -> ValueSetBox:
    """Value semigroup of one branch; conductor from the first run of ``e`` consecutive values."""
    ox, oy = branch.orders()
    e = branch.multiplicity
    P = 4 * e + 8
    while True:
        x, y = branch.param(P)
        vecs = []
        xa = TruncatedSeries.constant(1, P)
        a = 0
        while _weight(a, ox) < P:
            m = xa
            b = 0
            while _weight(a, ox) + _weight(b, oy) < P:
                vecs.append(m.coefficients(0, P))
                if oy == inf:
                    break
                m = m * y
                b += 1
            if ox == inf:
                break
            xa = xa * x
            a += 1
        values = sorted(echelon_form(vecs))
        present = set(values)
        for s in range(P - e + 1):
            if all(s + k in present for k in range(e)):
                return ValueSetBox.from_values([v for v in values if v < s], s)
        if 2 * P > precision_cap():
            raise PrecisionExhausted("branch semigroup conductor not found below precision cap")
        P *= 2


def branch_semigroup(curve: Curve, i: int) -> ValueSetBox:
    return branch_semigroup_of(curve.branches[i])


def branch_conductor(curve: Curve, i: int) -> int:
    return branch_semigroup(curve, i).c[0]


@lru_cache(maxsize=None)
def semigroup_conductor_bound(curve: Curve) -> tuple:
    """``c(Γ)_i = μ_i + Σ_{j≠i} I(f_i, f_j)``; used as the a-priori window for ``Γ``."""
    n = curve.r
    return tuple(branch_conductor(curve, i)
                 + sum(intersection_multiplicity(curve, i, j) for j in range(n) if j != i)
                 for i in range(n))
