import pytest

from curvetau.corpus import builtin_curves, cusp, line_x, line_y
from curvetau.curve import Curve
from curvetau.errors import NonIsolated
from curvetau.macaulay import local_colength
from curvetau.series import BivariatePoly
from curvetau.tjurina import (all_partitions, delorme_check, dimca_check, jacobian, lambda_shift,
                              milnor, rfold_check, tjurina_formula, tjurina_partition)
from curvetau.valueset import semigroup

X, Y = BivariatePoly.X(), BivariatePoly.Y()
CURVES = builtin_curves()


def test_node():
    rep = tjurina_formula(CURVES["node"])
    assert rep.tau == rep.tau_oracle == 1
    assert milnor(CURVES["node"]) == (1, 1)
    assert dimca_check(CURVES["node"], (0,)).slack == 0


def test_cusp():
    curve = CURVES["cusp"]
    assert semigroup(curve).elements_below(2) == [0]
    rep = tjurina_formula(curve)
    assert rep.tau == 2 and rep.branch_tau == [2]
    assert milnor(curve) == (2, 2)


def test_saito2_decomposition():
    curve = CURVES["saito2"]
    rep = tjurina_formula(curve)
    assert rep.branch_tau == [2, 2]
    assert rep.intersections[0][1] == 6
    assert rep.corrections == [0, 5]
    assert rep.tau == 15
    assert milnor(curve) == (15, 15)
    assert dimca_check(curve, (0,)).slack == 0


def test_saito3():
    curve = CURVES["saito3"]
    assert tjurina_formula(curve).tau == 40
    assert milnor(curve) == (40, 40)
    for J in all_partitions(3):
        v = dimca_check(curve, J)
        assert v.slack == 0 and v.certificates_hold


def test_partition_of_non_initial_split_matches_oracle():
    curve = CURVES["cusp_tangent_transversal"]
    for J in [(1,), (2,), (0, 2), (1, 2)]:
        rep = tjurina_partition(curve, J)
        assert rep.tau == rep.tau_oracle


def test_partition_rejects_improper_split():
    with pytest.raises(ValueError):
        tjurina_partition(CURVES["saito2"], (0, 1))
    with pytest.raises(ValueError):
        dimca_check(CURVES["cusp"], (0,))


def test_all_partitions_up_to_complement():
    assert all_partitions(2) == [(0,)]
    assert sorted(all_partitions(3)) == [(0,), (0, 1), (0, 2)]
    assert len(all_partitions(4)) == 7


def test_non_quasihomogeneous_pair():
    curve = CURVES["cusp_perturbed_pair"]
    assert tjurina_formula(curve).tau == 17
    assert milnor(curve) == (19, 19)
    assert rfold_check(curve) == (13, 15)


def test_tau_is_invariant_under_branch_order():
    curve = CURVES["cusp_tangent_transversal"]
    tau = tjurina_formula(curve).tau
    for order in [(1, 0, 2), (2, 1, 0), (1, 2, 0)]:
        assert tjurina_formula(curve.permuted(order)).tau == tau


def test_delorme_on_cusp():
    curve = CURVES["cusp"]
    assert delorme_check(curve, 0, X) == (3, 3)
    assert delorme_check(curve, 0, Y) == (4, 4)


def test_lambda_shift_of_cusp():
    curve = CURVES["cusp"]
    gamma, delta = semigroup(curve), jacobian(curve).delta
    lam = lambda_shift(delta, gamma)
    assert lam.min_point() == tuple(m + 1 - c for m, c in zip(delta.min_point(), gamma.c))


def test_jacobian_product_rule_on_node():
    jac = jacobian(Curve((line_x(), line_y())))
    # f = XY: ν_i(f_X) and ν_i(f_Y) give Δ_i = ℕ_{>=1}
    assert jac.delta_i(0).min_point() == (1,)
    assert jac.delta_i(1).min_point() == (1,)


def test_non_reduced_is_not_isolated():
    g = (Y ** 2 - X ** 3) ** 2
    with pytest.raises(NonIsolated):
        local_colength([g, g.diff_x(), g.diff_y()], degree_cap=16)


def test_tacnode_and_tangent_lines():
    assert tjurina_formula(CURVES["tacnode"]).tau == 3
    assert tjurina_formula(Curve((cusp(), line_y()))).tau == 7
