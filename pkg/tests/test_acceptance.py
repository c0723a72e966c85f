"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines are printed even without ``-s``).
Caches are cleared before each criterion so the timings are cold.
"""
import time
from itertools import combinations
from math import inf

import pytest

from curvetau import curve as curve_mod
from curvetau import tjurina as tj
from curvetau import valueset as vs
from curvetau.colength import lemma_tec_check
from curvetau.corpus import builtin_curves
from curvetau.curve import intersection_matrix, order_on_branch, set_precision_cap
from curvetau.document import dump_report
from curvetau.macaulay import DEFAULT_DEGREE_CAP
from curvetau.report import dimca, invariants
from curvetau.series import BivariatePoly
from curvetau.valueset import GeneratingFamily, box_out_conditions, compute, sandwich_holds

X, Y = BivariatePoly.X(), BivariatePoly.Y()
CURVES = builtin_curves()


def _cold():
    for fn in (curve_mod._lift_y, curve_mod.branch_semigroup_of, curve_mod.semigroup_conductor_bound,
               tj.jacobian, tj.tjurina_formula, vs.span_space, vs.compute):
        fn.cache_clear()


@pytest.fixture
def report(capsys):
    """Collect failures for one criterion and print its verdict line."""
    _cold()
    state = {"failures": [], "start": time.perf_counter()}

    def check(ok, what):
        if not ok:
            state["failures"].append(what)

    def finish(number, title, limit=None):
        elapsed = time.perf_counter() - state["start"]
        if limit is not None and elapsed >= limit:
            state["failures"].append(f"took {elapsed:.1f}s, limit {limit}s")
        verdict = "PASS" if not state["failures"] else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {number} {verdict}: {title} ({elapsed:.2f}s)")
            for f in state["failures"]:
                print(f"    {f}")
        assert not state["failures"]

    check.finish = finish
    return check


def _proper_subsets(r):
    return [J for s in range(1, r) for J in combinations(range(r), s)]


def _golden(check, name, tau, mu):
    t0 = time.perf_counter()
    curve = CURVES[name]
    rep = tj.tjurina_formula(curve)
    check(rep.tau == rep.tau_oracle == tau, f"{name}: τ formula {rep.tau}, oracle {rep.tau_oracle}, want {tau}")
    check(tj.milnor(curve) == (mu, mu), f"{name}: μ {tj.milnor(curve)}, want {mu}")
    if curve.r >= 2:
        for J in tj.all_partitions(curve.r):
            v = tj.dimca_check(curve, J)
            check(v.slack == 0, f"{name}: Dimca slack {v.slack} at J={J}")
    check(time.perf_counter() - t0 < 10, f"{name}: over 10 s")
    return rep


def test_criterion_1_golden_curves(report):
    _golden(report, "node", 1, 1)
    _golden(report, "cusp", 2, 2)
    cusp = CURVES["cusp"]
    S = vs.semigroup(cusp)
    report(S.elements_below(S.c[0]) == [0] and S.c == (2,), f"cusp: Γ below conductor {S.elements_below(S.c[0])}, c={S.c}")
    report(curve_mod.branch_conductor(cusp, 0) == 2, "cusp: conductor of the branch is not 2")
    rep = _golden(report, "saito2", 15, 15)
    report(rep.intersections[0][1] == 6, f"saito2: I = {rep.intersections[0][1]}")
    parts = (rep.branch_tau[0], rep.branch_tau[1], rep.intersections[0][1], rep.corrections[1])
    report(parts == (2, 2, 6, 5), f"saito2: decomposition {parts}, want (2, 2, 6, 5)")
    report.finish(1, "golden curves node, cusp, two-branch Saito")


def test_criterion_2_three_branch_saito(report):
    curve = CURVES["saito3"]
    I = intersection_matrix(curve)
    by_formula = sum(curve_mod.branch_conductor(curve, i) for i in range(3)) \
        + 2 * sum(I[i][j] for i, j in combinations(range(3), 2)) - 3 + 1
    report(by_formula == 40, f"Milnor formula gives {by_formula}")
    _golden(report, "saito3", 40, 40)
    for J in [(0,), (0, 1)]:
        report(tj.dimca_check(curve, J).slack == 0, f"initial segment J={J} has nonzero slack")
    report.finish(2, "three-branch Saito τ = μ = 40, all splits sharp", limit=120)


def test_criterion_3_formula_vs_oracle(report):
    report(len(CURVES) >= 10, f"corpus has {len(CURVES)} curves")
    for name, curve in CURVES.items():
        rep = tj.tjurina_formula(curve)
        report(rep.tau == rep.tau_oracle, f"{name}: τ formula {rep.tau} vs oracle {rep.tau_oracle}")
        oracle, formula = tj.milnor_oracle(curve), tj.milnor_formula(curve)
        report(oracle == formula, f"{name}: μ oracle {oracle} vs formula {formula}")
        for J in _proper_subsets(curve.r):
            p = tj.tjurina_partition(curve, J)
            report(p.tau == rep.tau_oracle, f"{name}: partition J={J} gives {p.tau}")
    report.finish(3, f"formula = oracle on {len(CURVES)} curves, every split", limit=600)


def test_criterion_4_two_way_theta(report):
    count = 0
    for name, curve in CURVES.items():
        for label, E in (("Γ", vs.semigroup(curve)), ("Δ", tj.jacobian(curve).delta)):
            a, b = E.theta_via_rm(), E.theta_via_fiber()
            report(a == b, f"{name} {label}: relative maximals {a} vs fibers {b}")
            count += 1
    report.finish(4, f"Θ two ways on {count} value sets")


def _structure_of(report, name, E, win):
    r = E.r
    for i in range(r):
        N = win.partial_values(i, [k for k in range(r) if k != i])
        report(N == E.n_set(i) and N.c[0] == E.c[i], f"{name}: conductor cross-check fails on branch {i}")
        for d in range(E.lo[i] - 2, E.c[i] + 3):
            conds = box_out_conditions(E, N, i, d)
            report(len(set(conds)) == 1, f"{name}: box-out conditions disagree at branch {i}, δ={d}: {conds}")
    report(sandwich_holds(E), f"{name}: sandwich fails")


def test_criterion_5_structure(report):
    checks = 0
    for name, curve in CURVES.items():
        f = curve.f
        for fam in (GeneratingFamily.local_ring(curve), GeneratingFamily.ideal(curve, [f.diff_x(), f.diff_y()])):
            E, win = compute(fam)
            _structure_of(report, f"{name} {fam.label}", E, win)
            checks += 1
        G = vs.semigroup(curve)
        I = intersection_matrix(curve)
        lhs, rhs = sum(G.theta_via_rm()[1:]), sum(I[i][j] for i, j in combinations(range(curve.r), 2))
        report(lhs == rhs, f"{name}: Σ Θ_i(Γ) = {lhs} vs Σ I = {rhs}")
        for i, b in enumerate(curve.branches):
            sub = curve.subcurve((i,))
            fi = sub.f
            O = GeneratingFamily.local_ring(sub)
            jac = GeneratingFamily.ideal(sub, [fi.diff_x(), fi.diff_y()])
            for h in (X, Y, X + Y):
                if order_on_branch(b, h) == inf:
                    continue
                for inner in (None, jac):
                    left, right = lemma_tec_check(h, O, inner)
                    report(left == right, f"{name} branch {i}: colength identity {left} vs {right}")
            if b.multiplicity > 1:
                for h in (X, Y):
                    lhs, rhs = tj.delorme_check(curve, i, h)
                    report(lhs == rhs, f"{name} branch {i}: Delorme {lhs} vs {rhs}")
    report.finish(5, f"structure suite on {checks} value sets")


def test_criterion_6_bound_certificates(report):
    n = 0
    for name, curve in CURVES.items():
        if curve.r < 2:
            continue
        for J in _proper_subsets(curve.r):
            v = tj.dimca_check(curve, J)
            n += 1
            report(v.first_term <= v.first_bound, f"{name} J={J}: first term {v.first_term} > {v.first_bound}")
            for t, b in zip(v.later_terms, v.later_bounds):
                report(t <= b, f"{name} J={J}: later term {t} > {b}")
            report(v.slack >= 0, f"{name} J={J}: slack {v.slack}")
    report.finish(6, f"bound certificates on {n} splits")


def _canonical(curve, degree_cap, multiplier):
    inv = invariants(curve, degree_cap, multiplier)
    dim = dimca(curve, [J for J in _proper_subsets(curve.r)], degree_cap, multiplier) if curve.r >= 2 else None
    return dump_report({"invariants": inv, "dimca": dim})


def test_criterion_7_stability(report):
    try:
        for name, curve in CURVES.items():
            set_precision_cap(None)
            base = _canonical(curve, DEFAULT_DEGREE_CAP, 1)
            set_precision_cap(2 * curve_mod.DEFAULT_PRECISION_CAP)
            doubled = _canonical(curve, 2 * DEFAULT_DEGREE_CAP, 2)
            report(base == doubled, f"{name}: canonical report changed under doubling")
    finally:
        set_precision_cap(None)
    report.finish(7, "canonical reports byte-identical under doubled precision and bounds")
