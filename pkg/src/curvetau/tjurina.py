"""Tjurina and Milnor numbers of a multi-branch curve and their decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from curvetau.boxes import ValueSetBox
from curvetau.curve import (Curve, branch_conductor, branch_semigroup, intersection_matrix,
                            order_on_branch, semigroup_conductor_bound)
from curvetau.errors import OracleMismatch
from curvetau.macaulay import DEFAULT_DEGREE_CAP, intersection_number, local_colength
from curvetau.series import BivariatePoly
from curvetau.valueset import GeneratingFamily, ModuleWindow, compute


@dataclass(frozen=True)
class JacobianIdeal:
    curve: Curve
    gens: GeneratingFamily
    delta: ValueSetBox
    window: ModuleWindow | None = field(default=None, repr=False, compare=False)

    def delta_i(self, i: int) -> ValueSetBox:
        return self.delta.project((i,))


def branch_jacobian_values(curve: Curve, i: int, multiplier: int = 1) -> ValueSetBox:
    """``ν_i(𝒥(f_i))`` on the single branch ``i``."""
    sub = curve.subcurve((i,))
    fi = sub.f
    return compute(GeneratingFamily.ideal(sub, [fi.diff_x(), fi.diff_y()]), multiplier)[0]


@lru_cache(maxsize=None)
def jacobian(curve: Curve, multiplier: int = 1) -> JacobianIdeal:
    """``𝒥(f) = ⟨f_X, f_Y⟩𝒪`` with its value set.

    Each ``Δ_i`` is checked against ``ν_i(∏_{j≠i} f_j) + ν_i(𝒥(f_i))``.
    """
    f = curve.f
    fam = GeneratingFamily.ideal(curve, [f.diff_x(), f.diff_y()], "J(f)")
    delta, win = compute(fam, multiplier)
    for i in range(curve.r):
        others = curve.product_of([k for k in range(curve.r) if k != i])
        expected = branch_jacobian_values(curve, i, multiplier).translate((order_on_branch(curve.branches[i], others),))
        if delta.project((i,)) != expected:
            raise OracleMismatch(f"Δ_{i} = {delta.project((i,))} but the product rule gives {expected}")
    return JacobianIdeal(curve, fam, delta, win)


def tjurina_oracle(curve: Curve, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    f = curve.f
    return local_colength([f, f.diff_x(), f.diff_y()], degree_cap)


def milnor_oracle(curve: Curve, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    f = curve.f
    return local_colength([f.diff_x(), f.diff_y()], degree_cap)


def milnor_formula(curve: Curve) -> int:
    I = intersection_matrix(curve)
    pairs = sum(I[i][j] for i, j in combinations(range(curve.r), 2))
    return sum(branch_conductor(curve, i) for i in range(curve.r)) + 2 * pairs - curve.r + 1


def milnor(curve: Curve, degree_cap: int = DEFAULT_DEGREE_CAP) -> tuple:
    """``(oracle, formula)``; raises :class:`OracleMismatch` if they differ."""
    out = (milnor_oracle(curve, degree_cap), milnor_formula(curve))
    if out[0] != out[1]:
        raise OracleMismatch(f"Milnor number: oracle {out[0]} vs formula {out[1]}")
    return out


def branch_tjurina(curve: Curve, i: int, multiplier: int = 1) -> int:
    """``τ(C_i) = #(Γ_i ∖ ν_i(𝒥(f_i)))``."""
    return branch_semigroup(curve, i).count_minus(branch_jacobian_values(curve, i, multiplier))


def _check_partial(jac: JacobianIdeal, i: int, L) -> ValueSetBox:
    """``ν_i(𝒩_L)`` from the box, compared with the values read off the module directly."""
    from_box = jac.delta.nu_partial_n(i, L)
    if L:
        direct = jac.window.partial_values(i, L)
        if direct != from_box:
            raise OracleMismatch(f"ν_{i}(N_{sorted(L)}): box {from_box} vs module {direct}")
    return from_box


def _permuted_partial(jac: JacobianIdeal, pjac: JacobianIdeal, order, k: int, L) -> ValueSetBox:
    """``ν_k(𝒩_L)`` on the reordered box, checked against the original module."""
    from_box = pjac.delta.nu_partial_n(k, list(L))
    direct = jac.window.partial_values(order[k], [order[l] for l in L])
    if from_box != direct:
        raise OracleMismatch(f"reordered ν_{k}(N_{list(L)}): box {from_box} vs module {direct}")
    return from_box


@dataclass
class TjurinaReport:
    r: int
    tau: int
    branch_tau: list
    intersections: list
    corrections: list
    tau_oracle: int
    milnor: tuple = ()
    split: tuple | None = None
    tau_J: int | None = None
    tau_K: int | None = None
    intersection_JK: int | None = None
    cross_terms: list = field(default_factory=list)
    dimca_slack: int | None = None

    def to_json(self) -> dict:
        d = {
            "r": self.r,
            "tau": self.tau,
            "tau_oracle": self.tau_oracle,
            "branch_tau": list(self.branch_tau),
            "intersection_matrix": self.intersections,
            "corrections": list(self.corrections),
        }
        if self.milnor:
            d["milnor"] = {"oracle": self.milnor[0], "formula": self.milnor[1]}
        if self.split is not None:
            d.update({
                "J": [k + 1 for k in self.split[0]],
                "K": [k + 1 for k in self.split[1]],
                "tau_J": self.tau_J, "tau_K": self.tau_K,
                "intersection_JK": self.intersection_JK,
                "cross_terms": list(self.cross_terms),
                "dimca_slack": self.dimca_slack,
            })
        return d


@lru_cache(maxsize=None)
def tjurina_formula(curve: Curve, degree_cap: int = DEFAULT_DEGREE_CAP, multiplier: int = 1) -> TjurinaReport:
    """``τ = Σ τ(C_i) + Σ I(f_i, f_j) + Σ_{i>=2} #(Δ_i ∖ ν_i(𝒩_[1,i)))``, checked against the oracle."""
    jac = jacobian(curve, multiplier)
    I = intersection_matrix(curve)
    btau = [branch_tjurina(curve, i, multiplier) for i in range(curve.r)]
    corr = [0]
    for i in range(1, curve.r):
        corr.append(jac.delta_i(i).count_minus(_check_partial(jac, i, list(range(i)))))
    pairs = sum(I[i][j] for i, j in combinations(range(curve.r), 2))
    tau = sum(btau) + pairs + sum(corr)
    oracle = tjurina_oracle(curve, degree_cap)
    if tau != oracle:
        raise OracleMismatch(f"τ formula {tau} vs oracle {oracle}")
    return TjurinaReport(curve.r, tau, btau, I, corr, oracle)


def _normalize_split(r: int, J) -> tuple:
    J = tuple(sorted(set(J)))
    if not J or len(J) >= r or any(not 0 <= k < r for k in J):
        raise ValueError(f"J={J} is not a proper nonempty subset of the branches")
    K = tuple(k for k in range(r) if k not in J)
    return J, K


def _nu_product(curve: Curve, i: int, idx) -> int:
    return order_on_branch(curve.branches[i], curve.product_of(idx))


def _check_equal_lemma(curve: Curve, jac: JacobianIdeal, part, rest, multiplier: int = 1):
    """For ``i`` in ``part``: ``Δ_i`` and ``ν_i(𝒩_{part∖i})`` are the sub-curve data shifted by ``ν_i(f^rest)``."""
    sub = jacobian(curve.subcurve(part), multiplier)
    for pos, i in enumerate(part):
        shift = (_nu_product(curve, i, rest),)
        if jac.delta_i(i) != sub.delta_i(pos).translate(shift):
            raise OracleMismatch(f"Δ_{i} is not ν_{i}(f^K) + Δ^J_{i}")
        if len(part) > 1:
            mine = jac.delta.nu_partial_n(i, [k for k in part if k != i])
            theirs = sub.delta.nu_partial_n(pos, [p for p in range(len(part)) if p != pos])
            if mine != theirs.translate(shift):
                raise OracleMismatch(f"ν_{i}(N) is not ν_{i}(f^K) + ν_{i}(N^J)")


def tjurina_partition(curve: Curve, J, degree_cap: int = DEFAULT_DEGREE_CAP,
                      multiplier: int = 1) -> TjurinaReport:
    """Split ``τ(C)`` along ``J | K``.

    Branches are reordered so that ``J`` comes first; the value set of the
    reordered curve is the transposed box.
    """
    J, K = _normalize_split(curve.r, J)
    order = J + K
    pc = curve.permuted(order)
    base = tjurina_formula(curve, degree_cap, multiplier)
    jac = jacobian(curve, multiplier)
    pjac = JacobianIdeal(pc, GeneratingFamily.ideal(pc, [pc.f.diff_x(), pc.f.diff_y()]),
                         jac.delta.permute(order))
    j = len(J)
    Jp, Kp = tuple(range(j)), tuple(range(j, pc.r))
    _check_equal_lemma(pc, pjac, Jp, Kp, multiplier)
    _check_equal_lemma(pc, pjac, Kp, Jp, multiplier)
    tau_J = tjurina_formula(pc.subcurve(Jp), degree_cap, multiplier).tau
    tau_K = tjurina_formula(pc.subcurve(Kp), degree_cap, multiplier).tau
    I = intersection_matrix(pc)
    I_JK = sum(I[a][b] for a in Jp for b in Kp)
    cross = []
    for k in Kp:
        lower = _permuted_partial(jac, pjac, order, k, range(k))
        upper = pjac.delta_i(k) if k == j else _permuted_partial(jac, pjac, order, k, range(j, k))
        cross.append(upper.count_minus(lower))
    total = tau_J + tau_K + I_JK + sum(cross)
    if total != base.tau_oracle:
        raise OracleMismatch(f"partition {J}|{K}: {total} vs oracle {base.tau_oracle}")
    return TjurinaReport(curve.r, total, base.branch_tau, base.intersections, base.corrections,
                         base.tau_oracle, (), (J, K), tau_J, tau_K, I_JK, cross,
                         2 * I_JK - 1 - (total - tau_J - tau_K))


@dataclass
class DimcaVerdict:
    J: tuple
    K: tuple
    lhs: int
    rhs: int
    slack: int
    first_term: int
    first_bound: int
    later_terms: list
    later_bounds: list
    certificates_hold: bool

    def to_json(self) -> dict:
        return {
            "J": [k + 1 for k in self.J], "K": [k + 1 for k in self.K],
            "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack,
            "first_term": self.first_term, "first_bound": self.first_bound,
            "later_terms": list(self.later_terms), "later_bounds": list(self.later_bounds),
            "certificates_hold": self.certificates_hold,
        }


def dimca_check(curve: Curve, J, degree_cap: int = DEFAULT_DEGREE_CAP, multiplier: int = 1) -> DimcaVerdict:
    """``τ(C) - τ(C_J) - τ(C_K) <= 2 I(C_J, C_K) - 1`` with the per-term bounds behind it."""
    if curve.r < 2:
        raise ValueError("needs at least two branches")
    rep = tjurina_partition(curve, J, degree_cap, multiplier)
    Jn, Kn = rep.split
    pc = curve.permuted(Jn + Kn)
    j = len(Jn)
    bounds = [_nu_product(pc, k, range(j)) for k in range(j, pc.r)]
    first_bound = bounds[0] - 1
    ok = rep.cross_terms[0] <= first_bound and all(t <= b for t, b in zip(rep.cross_terms[1:], bounds[1:]))
    lhs = rep.tau - rep.tau_J - rep.tau_K
    rhs = 2 * rep.intersection_JK - 1
    return DimcaVerdict(Jn, Kn, lhs, rhs, rhs - lhs, rep.cross_terms[0], first_bound,
                        rep.cross_terms[1:], bounds[1:], ok and rhs >= lhs)


def all_partitions(r: int) -> list:
    """Proper splits up to complement: ``J`` always contains the first branch."""
    out = []
    for s in range(1, r):
        for rest in combinations(range(1, r), s - 1):
            out.append((0,) + rest)
    return out


def rfold_check(curve: Curve, degree_cap: int = DEFAULT_DEGREE_CAP) -> tuple:
    """``(τ(C) - Σ τ(C_i), μ(C) - Σ μ(C_i))``; the first never exceeds the second."""
    rep = tjurina_formula(curve, degree_cap)
    mu = milnor(curve, degree_cap)[0]
    return rep.tau - sum(rep.branch_tau), mu - sum(branch_conductor(curve, i) for i in range(curve.r))


def delorme_check(curve: Curve, i: int, h: BivariatePoly) -> tuple:
    """``(ν_i(h_Y (f_i)_X - h_X (f_i)_Y), ν_i(h) + μ_i - 1)``."""
    b = curve.branches[i]
    fi = b.poly
    lhs = order_on_branch(b, h.diff_y() * fi.diff_x() - h.diff_x() * fi.diff_y())
    rhs = order_on_branch(b, h) + branch_conductor(curve, i) - 1
    return lhs, rhs


def lambda_shift(delta: ValueSetBox, gamma: ValueSetBox) -> ValueSetBox:
    """``Λ = Δ - c(Γ) + (1, …, 1)``."""
    return delta.translate(tuple(1 - c for c in gamma.c))


def intersection_oracle(curve: Curve, i: int, j: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    return intersection_number(curve.branches[i].poly, curve.branches[j].poly, degree_cap)


def gamma_conductor_check(curve: Curve, gamma: ValueSetBox) -> bool:
    return tuple(gamma.c) == semigroup_conductor_bound(curve)

