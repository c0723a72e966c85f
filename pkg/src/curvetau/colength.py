"""Lengths of quotients of fractional ideals, from value sets and by rank."""
from __future__ import annotations

from dataclasses import dataclass
from math import inf

from curvetau.boxes import ValueSetBox
from curvetau.curve import KElement, order_on_branch
from curvetau.errors import ConductorNotStabilized, NotIncluded
from curvetau.series import BivariatePoly
from curvetau.valueset import GeneratingFamily, ModuleWindow, compute, span_space


@dataclass(frozen=True)
class IdealPair:
    """``inner ⊆ outer``; build with :meth:`certified` to check the inclusion."""

    inner: GeneratingFamily
    outer: GeneratingFamily
    included: bool = False

    @classmethod
    def certified(cls, inner: GeneratingFamily, outer: GeneratingFamily) -> "IdealPair":
        if inner.curve != outer.curve:
            raise ValueError("ideals live on different curves")
        _, win = compute(outer)
        for j in range(len(inner.gens)):
            z = inner.element(j, [b + max(0, -l) + 1 for b, l in zip(win.B, win.lo)])
            if not win.contains(z):
                raise NotIncluded(f"inner generator {j} is not in the outer ideal")
        return cls(inner, outer, True)

    def _require(self):
        if not self.included:
            raise NotIncluded("inclusion not certified; use IdealPair.certified")


def colength_truncation(E: ValueSetBox, gamma) -> int:
    """``dim ℐ/ℐ(γ)`` for ``γ >= c(E)`` from gaps and Θ."""
    gamma = tuple(gamma)
    if len(gamma) != E.r or any(g < c for g, c in zip(gamma, E.c)):
        raise ValueError(f"γ={gamma} is not above the conductor {E.c}")
    theta = E.theta_via_rm()
    total = 0
    for i in range(E.r):
        Ei = E.project((i,))
        total += gamma[i] - E.lo[i] - len(Ei.gaps()) - theta[i]
    return total


def _per_branch(E: ValueSetBox, D: ValueSetBox):
    """``(#(E_i ∖ D_i), #(D_i ∖ ν_i(N_[1,i)(D))), #(E_i ∖ ν_i(N_[1,i)(E))))`` per branch."""
    rows = []
    for i in range(E.r):
        Ei, Di = E.project((i,)), D.project((i,))
        nd = D.nu_partial_n(i, range(i))
        ne = E.nu_partial_n(i, range(i))
        rows.append((Ei.count_minus(Di), Di.count_minus(nd), Ei.count_minus(ne)))
    return rows


def colength_pair(pair: IdealPair) -> int:
    """``ℓ(ℐ/𝒥)`` as a sum of per-branch lengths plus fiber corrections."""
    pair._require()
    E, D = compute(pair.outer)[0], compute(pair.inner)[0]
    return sum(a + b - c for a, b, c in _per_branch(E, D))


def colength_pair_codim(pair: IdealPair) -> int:
    """Same length with Θ in place of the fiber counts."""
    pair._require()
    E, D = compute(pair.outer)[0], compute(pair.inner)[0]
    tE, tD = E.theta_via_rm(), D.theta_via_rm()
    return sum(E.project((i,)).count_minus(D.project((i,))) + tD[i] - tE[i] for i in range(E.r))


def _common_window(pair: IdealPair, multiplier: int):
    lo = tuple(min(a, b) for a, b in zip(pair.inner.min_point(), pair.outer.min_point()))
    top = tuple(max(a, b) for a, b in zip(pair.inner.cover(), pair.outer.cover()))
    B = tuple(l + multiplier * (t + 1 - l) for l, t in zip(lo, top))
    return lo, B


def colength_oracle(pair: IdealPair, bound=None) -> int:
    """``dim span(outer) - dim span(inner)`` in a common truncation window.

    ``bound`` is the window multiplier; the result must not change when it doubles.
    """
    pair._require()
    m = bound or 1
    values = []
    for mult in (m, 2 * m):
        lo, B = _common_window(pair, mult)
        values.append(span_space(pair.outer, lo, B).dim - span_space(pair.inner, lo, B).dim)
    if values[0] != values[1]:
        raise ConductorNotStabilized(f"colength oracle unstable under doubling: {values}")
    return values[0]


def window_colength(win: ModuleWindow, gamma) -> int:
    return win.colength_above(gamma)


def lemma_tec_check(h: BivariatePoly, outer: GeneratingFamily, inner: GeneratingFamily | None = None):
    """Both sides of ``ℓ(ℳ/hℒ) = ν(h) + ℓ(ℳ/ℒ)`` on a single branch (``ℒ`` defaults to ``ℳ``)."""
    curve = outer.curve
    if curve.r != 1:
        raise ValueError("single-branch identity")
    inner = inner or outer
    v = order_on_branch(curve.branches[0], h)
    if v == inf:
        raise ValueError("h vanishes on the branch")
    left = colength_oracle(IdealPair.certified(inner.times(h), outer))
    right = v + colength_oracle(IdealPair.certified(inner, outer))
    return left, right


def in_ideal(fam: GeneratingFamily, z: KElement) -> bool:
    _, win = compute(fam)
    return win.contains(z)

