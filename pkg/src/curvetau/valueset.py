"""Value sets of fractional ideals via exact linear algebra.

A fractional ideal ``ℐ`` is given by finitely many generators over the local
ring.  Below a bound ``B`` that dominates the conductor, ``ℐ/ℐ(B)`` is the
finite-dimensional image of the ``Q``-span of ``X^a Y^b · g``.  For every
``α`` in the window the dimension of ``{z : ν(z) >= α}`` is computed once;
``α ∈ ν(ℐ)`` iff raising any single coordinate of ``α`` drops that dimension
(a vector space over an infinite field is not a finite union of proper
subspaces).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import inf
from typing import Union

import numpy as np

from curvetau.boxes import ValueSetBox
from curvetau.curve import Curve, KElement, semigroup_conductor_bound
from curvetau.errors import ConductorNotStabilized, PrecisionExhausted
from curvetau.linalg import echelon_form, reduce_into
from curvetau.series import BivariatePoly, TruncatedSeries, eval_poly

Component = Union[BivariatePoly, TruncatedSeries]


@dataclass(frozen=True)
class GeneratingFamily:
    """Generators of an ``𝒪``-submodule of ``∏ Q((t_i))``.

    Each generator is a tuple with one entry per branch: a polynomial
    (evaluated on that branch's parametrization) or a fixed truncated series.
    """

    curve: Curve
    gens: tuple
    label: str = ""

    @classmethod
    def ideal(cls, curve: Curve, polys, label="") -> "GeneratingFamily":
        return cls(curve, tuple(tuple([p] * curve.r) for p in polys), label)

    @classmethod
    def local_ring(cls, curve: Curve) -> "GeneratingFamily":
        return cls.ideal(curve, [BivariatePoly.const(1)], "O")

    @classmethod
    def product_ring(cls, curve: Curve) -> "GeneratingFamily":
        """``∏ 𝒪_i``, generated by the idempotents."""
        one, zero = BivariatePoly.const(1), BivariatePoly()
        gens = tuple(tuple(one if k == i else zero for k in range(curve.r)) for i in range(curve.r))
        return cls(curve, gens, "prod O_i")

    @classmethod
    def from_kelements(cls, curve: Curve, elems, label="") -> "GeneratingFamily":
        return cls(curve, tuple(tuple(z.components) for z in elems), label)

    def times(self, p: BivariatePoly, label="") -> "GeneratingFamily":
        """``p · ℐ`` (polynomial components only)."""
        return GeneratingFamily(self.curve, tuple(tuple(q * p for q in g) for g in self.gens), label)

    def component(self, j: int, k: int, precision: int) -> TruncatedSeries:
        c = self.gens[j][k]
        if isinstance(c, BivariatePoly):
            if c.is_zero():
                return TruncatedSeries.zero(precision)
            return eval_poly(c, *self.curve.branches[k].param(precision))
        if c.trunc < precision:
            raise PrecisionExhausted(f"generator {j} on branch {k} known only below t^{c.trunc}")
        return c.truncate(precision)

    def element(self, j: int, precision) -> KElement:
        if isinstance(precision, int):
            precision = [precision] * self.curve.r
        return KElement(tuple(self.component(j, k, P) for k, P in enumerate(precision)))

    def _certified_zero(self, j: int, k: int) -> bool:
        c = self.gens[j][k]
        if isinstance(c, BivariatePoly):
            return c.is_zero() or self.curve.branches[k].poly.divides(c)
        return False

    def orders(self, precision: int = 64) -> list:
        """``ν_k`` of every generator component (``inf`` when certified or vanishing to cap)."""
        out = []
        for j in range(len(self.gens)):
            row = []
            for k in range(self.curve.r):
                row.append(self._order(j, k, precision))
            out.append(row)
        return out

    def _order(self, j: int, k: int, precision: int):
        if self._certified_zero(j, k):
            return inf
        c = self.gens[j][k]
        P = precision
        while True:
            s = self.component(j, k, P) if isinstance(c, BivariatePoly) else c
            if not s.is_zero_to_precision:
                return s.order
            if not isinstance(c, BivariatePoly):
                return inf
            P *= 2
            self.curve.branches[k].param(P)  # raises PrecisionExhausted past the cap

    def regular_element(self, precision: int = 64):
        """Coefficients and valuation of a ``Q``-combination of generators with no zero component."""
        n = len(self.gens)
        trials = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        trials += [[k ** i for i in range(n)] for k in range(1, 8)]
        P = precision
        while True:
            for coeffs in trials:
                vals = []
                for k in range(self.curve.r):
                    s = None
                    for j, a in enumerate(coeffs):
                        if a:
                            term = self.component(j, k, P).scale(a)
                            s = term if s is None else s + term
                    if s is None or s.is_zero_to_precision:
                        break
                    vals.append(s.order)
                else:
                    return coeffs, tuple(vals)
            P *= 2
            for b in self.curve.branches:
                b.param(P)

    def cover(self) -> tuple:
        """Certified upper bound for the conductor: ``ν(g) + c(Γ)`` for a regular ``g`` in the module."""
        _, v = self.regular_element()
        cg = semigroup_conductor_bound(self.curve)
        return tuple(a + b for a, b in zip(v, cg))

    def min_point(self) -> tuple:
        """Componentwise minimum valuation over generators (= min of the value set)."""
        ords = self.orders()
        return tuple(min(row[k] for row in ords) for k in range(self.curve.r))


class ModuleWindow:
    """The image of ``ℐ`` in ``∏_k t^{lo_k} Q[[t]] / t^{B_k}`` with its dimension grid.

    ``dims[α - lo]`` is ``dim {z ∈ ℐ : ν(z) >= α} / ℐ(B)`` for ``lo <= α <= B``;
    a coordinate equal to ``B_k`` means "vanishes on branch ``k`` in the window".
    """

    def __init__(self, fam: GeneratingFamily, lo, B):
        self.fam = fam
        self.lo = tuple(lo)
        self.B = tuple(B)
        if any(b <= l for b, l in zip(self.B, self.lo)):
            raise ValueError("window must be nonempty on every branch")
        self.sizes = tuple(b - l for b, l in zip(self.B, self.lo))
        self.offsets = tuple(int(v) for v in np.cumsum((0,) + self.sizes[:-1]))
        self.basis = self._span()
        self.dim = len(self.basis)
        self.dims = np.zeros(tuple(n + 1 for n in self.sizes), dtype=np.int64)
        self._scan(list(self.basis.values()), 0, self.dim, ())

    # -- construction ----------------------------------------------------
    def _degree_cap(self, ords) -> int:
        d = 1
        for k, b in enumerate(self.fam.curve.branches):
            m = b.multiplicity
            for row in ords:
                o = row[k]
                if o == inf:
                    continue
                d = max(d, -(-(self.B[k] - o) // m))
        return d

    def _span(self) -> dict:
        fam = self.fam
        curve = fam.curve
        ords = fam.orders()
        d = self._degree_cap(ords)
        monos = [(a, s - a) for s in range(d) for a in range(s + 1)]
        per_branch = []
        for k, br in enumerate(curve.branches):
            P = self.B[k] + max(0, -self.lo[k]) + 1
            x, y = br.param(P)
            xp, yp = [TruncatedSeries.constant(1, P)], [TruncatedSeries.constant(1, P)]
            for _ in range(d):
                xp.append(xp[-1] * x)
                yp.append(yp[-1] * y)
            comps = []
            for j in range(len(fam.gens)):
                if ords[j][k] == inf:
                    comps.append([None] * len(monos))
                    continue
                g = fam.component(j, k, P)
                row = []
                for a, b in monos:
                    prod = xp[a] * yp[b] * g
                    if prod.trunc < self.B[k]:
                        raise PrecisionExhausted(f"branch {k}: product known only below t^{prod.trunc}")
                    row.append(prod.coefficients(self.lo[k], self.B[k]) if prod._val < self.B[k] else None)
                comps.append(row)
            per_branch.append(comps)
        ech: dict = {}
        zero = [[Fraction(0)] * n for n in self.sizes]
        for j in range(len(fam.gens)):
            for m in range(len(monos)):
                v = []
                for k in range(curve.r):
                    part = per_branch[k][j][m]
                    v.extend(part if part is not None else zero[k])
                reduce_into(ech, v)
        return ech

    def _scan(self, vecs, k, base, prefix):
        ech = echelon_form(vecs) if prefix else {min(i for i, c in enumerate(v) if c): v for v in vecs}
        base -= len(ech)
        n = self.sizes[k]
        leads = sorted(ech)
        last = k == len(self.sizes) - 1
        for ai in range(n + 1):
            sub = [ech[l] for l in leads if l >= ai]
            if last:
                self.dims[prefix + (ai,)] = base + len(sub)
            else:
                self._scan([v[n:] for v in sub], k + 1, base + len(sub), prefix + (ai,))

    # -- queries ---------------------------------------------------------
    def dim_at(self, alpha) -> int:
        idx = []
        for a, l, b in zip(alpha, self.lo, self.B):
            if a == inf:
                a = b
            if not l <= a <= b:
                raise ValueError(f"{alpha} outside window [{self.lo}, {self.B}]")
            idx.append(a - l)
        return int(self.dims[tuple(idx)])

    def membership(self) -> np.ndarray:
        """Boolean array over ``∏[lo_k, B_k - 1]``."""
        D = self.dims
        core = tuple(slice(0, n) for n in self.sizes)
        out = np.ones(self.sizes, dtype=bool)
        for k in range(len(self.sizes)):
            up = list(core)
            up[k] = slice(1, self.sizes[k] + 1)
            out &= D[core] > D[tuple(up)]
        return out

    def partial_values(self, i: int, L) -> ValueSetBox:
        """``ν_i(𝒩_L)`` read off the grid: elements vanishing (in the window) on ``L``."""
        L = set(L)

        def pred(a):
            alpha = [self.B[k] if k in L else self.lo[k] for k in range(len(self.lo))]
            alpha[i] = a
            lower = self.dim_at(alpha)
            alpha[i] = a + 1
            return lower > self.dim_at(alpha)
        return ValueSetBox.rank1(self.lo[i], self.B[i] - 1, pred)

    def colength_above(self, gamma) -> int:
        """``dim ℐ / ℐ(γ)`` for ``γ >= lo``.

        Past ``B`` (which dominates the conductor) every unit step on a
        coordinate adds exactly one dimension.
        """
        inside = [min(g, b) for g, b in zip(gamma, self.B)]
        excess = sum(g - b for g, b in zip(gamma, self.B) if g > b)
        return self.dim - self.dim_at(inside) + excess

    def vector_of(self, z: KElement) -> list:
        v = []
        for k, s in enumerate(z.components):
            if s.trunc < self.B[k]:
                raise PrecisionExhausted("element known below the window bound only")
            low = [e for e in s.terms() if e < self.lo[k]]
            if low:
                return None
            v.extend(s.coefficients(self.lo[k], self.B[k]))
        return v

    def contains(self, z: KElement) -> bool:
        """Membership of ``z`` in ``ℐ`` (valid once ``B`` dominates the conductor)."""
        v = self.vector_of(z)
        if v is None:
            return False
        trial = dict(self.basis)
        return reduce_into(trial, v) is None


def _window_bounds(fam: GeneratingFamily, multiplier: int):
    lo = fam.min_point()
    cover = fam.cover()
    if any(c < l for c, l in zip(cover, lo)):
        raise ConductorNotStabilized("cover below minimum")
    B = tuple(l + multiplier * (c + 1 - l) for l, c in zip(lo, cover))
    return lo, cover, B


@lru_cache(maxsize=None)
def span_space(fam: GeneratingFamily, lo=None, B=None, multiplier: int = 1) -> ModuleWindow:
    if lo is None or B is None:
        lo0, _, B0 = _window_bounds(fam, multiplier)
        lo = lo if lo is not None else lo0
        B = B if B is not None else B0
    return ModuleWindow(fam, tuple(lo), tuple(B))


@lru_cache(maxsize=None)
def compute(fam: GeneratingFamily, multiplier: int = 1):
    """``(ValueSetBox, ModuleWindow)`` with the conductor certified.

    The certificate: for each branch ``i`` the set ``{δ : (c with δ at i) ∈ E}``
    read from the box must coincide with the values of the elements vanishing
    on every other branch, read directly from the module, and its conductor
    must be ``c_i``.
    """
    failure = None
    for m in (multiplier, 2 * multiplier, 4 * multiplier):
        lo, _, B = _window_bounds(fam, m)
        win = span_space(fam, lo, B)
        try:
            box = ValueSetBox.from_membership(lo, tuple(b - 1 for b in B), win.membership())
            _certify(box, win)
        except ConductorNotStabilized as exc:
            failure = exc
            continue
        return box, win
    raise failure


def _certify(box: ValueSetBox, win: ModuleWindow):
    r = box.r
    for i in range(r):
        from_box = box.n_set(i)
        direct = win.partial_values(i, [k for k in range(r) if k != i])
        if from_box != direct or from_box.c[0] != box.c[i]:
            raise ConductorNotStabilized(
                f"conductor certificate failed on branch {i}: {from_box} vs {direct}")


def value_set(fam: GeneratingFamily, multiplier: int = 1) -> ValueSetBox:
    return compute(fam, multiplier)[0]


def min_point(E: ValueSetBox) -> tuple:
    return E.min_point()


def conductor(E: ValueSetBox) -> tuple:
    """Conductor, re-checked against the conductors of the ``N_i`` sets."""
    for i in range(E.r):
        if E.n_set(i).c[0] != E.c[i]:
            raise ConductorNotStabilized(f"N_{i} conductor disagrees with c(E)_{i}")
    return E.c


def project(E: ValueSetBox, J) -> ValueSetBox:
    return E.project(J)


def closed_fiber_nonempty(E: ValueSetBox, i: int, alpha) -> bool:
    return E.closed_fiber_nonempty(i, alpha)


def maximal_points(E: ValueSetBox) -> list:
    return E.maximal_points()


def relative_maximals(E: ValueSetBox) -> list:
    return E.relative_maximals()


def theta_via_rm(E: ValueSetBox) -> tuple:
    return E.theta_via_rm()


def theta_via_fiber(E: ValueSetBox) -> tuple:
    return E.theta_via_fiber()


def n_set(E: ValueSetBox, i: int) -> ValueSetBox:
    return E.n_set(i)


def nu_partial_n(E: ValueSetBox, i: int, L) -> ValueSetBox:
    return E.nu_partial_n(i, L)


def semigroup(curve: Curve, multiplier: int = 1) -> ValueSetBox:
    return value_set(GeneratingFamily.local_ring(curve), multiplier)


def box_out_conditions(E: ValueSetBox, N: ValueSetBox, i: int, delta: int) -> tuple:
    """The four equivalent conditions at ``α = (ρ with δ at i)``; ``N`` is ``N_i`` from the module."""
    alpha = list(E.c)
    alpha[i] = delta
    return (N.contains((delta,)), E.closed_fiber_contained(i, alpha),
            E.closed_fiber_nonempty(i, alpha), E.contains(alpha))


def sandwich_holds(E: ValueSetBox) -> bool:
    """``∏ N_i ⊆ E ⊆ ∏ E_i`` on the box."""
    Ns = [E.n_set(i) for i in range(E.r)]
    Es = [E.project((i,)) for i in range(E.r)]
    for a in E.box_points():
        inside = E.contains(a)
        if all(N.contains((x,)) for N, x in zip(Ns, a)) and not inside:
            return False
        if inside and not all(S.contains((x,)) for S, x in zip(Es, a)):
            return False
    return True


def inf_closed(E: ValueSetBox) -> bool:
    pts = list(E.points())
    return all(E.contains(tuple(min(x, y) for x, y in zip(a, b))) for a in pts for b in pts)
