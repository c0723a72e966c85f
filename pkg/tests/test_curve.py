from fractions import Fraction
from math import inf

import pytest

from curvetau.corpus import branch_4_6_13, builtin_curves, cusp, line_x, line_y, perturbed_cusp
from curvetau.curve import (AtLeast, Branch, Curve, branch_conductor, branch_semigroup,
                            intersection_matrix, intersection_multiplicity, lift, nu, nu_poly,
                            semigroup_conductor_bound, validate)
from curvetau.errors import BranchNotOnCurve, NonPrimitive, NonReduced, PrecisionExhausted
from curvetau.macaulay import intersection_number, local_colength
from curvetau.series import BivariatePoly, eval_poly

X, Y = BivariatePoly.X(), BivariatePoly.Y()
NODE = Curve((line_x(), line_y()))
CUSP = Curve((cusp(),))


def test_validate_node():
    rep = validate(NODE)
    assert rep.intersection[0][1] == rep.intersection[1][0] == 1


def test_validate_cusp():
    assert validate(CUSP).multiplicities == [2]


def test_branch_not_on_curve():
    bad = Curve((Branch.make(Y ** 2 - X ** 3, {2: 1}, {4: 1}),))
    with pytest.raises(BranchNotOnCurve):
        validate(bad)


def test_non_primitive_parametrization():
    bad = Curve((Branch.make(Y ** 2 - X ** 3, {4: 1}, {6: 1}),))
    with pytest.raises(NonPrimitive):
        validate(bad)


def test_duplicate_branch_is_non_reduced():
    with pytest.raises(NonReduced):
        validate(Curve((cusp(), cusp())))


def test_lift_and_nu():
    z = lift(NODE, X + Y, 8)
    assert nu(NODE, z) == (1, 1)
    zero = lift(NODE, BivariatePoly(), 8)
    assert all(s.is_zero_to_precision for s in zero.components)
    assert isinstance(nu(NODE, lift(NODE, X, 8))[0], AtLeast)


def test_nu_poly_certifies_infinity():
    assert nu_poly(NODE, X) == (inf, 1)
    assert nu_poly(CUSP, Y ** 2 - X ** 3) == (inf,)


def test_intersection_multiplicities():
    assert intersection_multiplicity(NODE, 0, 1) == 1
    assert intersection_multiplicity(Curve((cusp(), line_y())), 0, 1) == 3
    assert intersection_multiplicity(Curve((cusp(1), cusp(2))), 0, 1) == 6


def test_intersection_matches_macaulay_on_corpus():
    for curve in builtin_curves().values():
        I = intersection_matrix(curve)
        for i in range(curve.r):
            for j in range(i + 1, curve.r):
                assert I[i][j] == intersection_number(curve.branches[i].poly, curve.branches[j].poly)


def test_newton_lift_of_perturbed_cusp():
    b = perturbed_cusp()
    x, y = b.param(40)
    assert eval_poly(b.poly, x, y).is_zero_to_precision
    # y = t^3 sqrt(1 + t^2) = t^3 + t^5/2 - t^7/8 + t^9/16 - ...
    assert [y[k] for k in (3, 5, 7, 9)] == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)]


def test_precision_cap_is_enforced(monkeypatch):
    monkeypatch.setenv("CURVETAU_PRECISION_CAP", "16")
    with pytest.raises(PrecisionExhausted):
        perturbed_cusp().param(17)


@pytest.mark.parametrize("branch, below, conductor", [
    (cusp(), [0], 2),
    (branch_4_6_13(), [0, 4, 6, 8, 10, 12, 13, 14], 16),
    (perturbed_cusp(), [0], 2),
    (line_x(), [], 0),
    (Branch.make(Y ** 3 - X ** 4, {3: 1}, {4: 1}), [0, 3, 4], 6),
])
def test_branch_semigroups(branch, below, conductor):
    S = branch_semigroup(Curve((branch,)), 0)
    assert S.elements_below(S.c[0]) == below
    assert S.c[0] == conductor


def test_milnor_of_branch_is_conductor():
    for b in (cusp(), branch_4_6_13(), Branch.make(Y ** 3 - X ** 4, {3: 1}, {4: 1})):
        c = Curve((b,))
        f = b.poly
        assert branch_conductor(c, 0) == local_colength([f.diff_x(), f.diff_y()])


def test_gamma_conductor_bound():
    assert semigroup_conductor_bound(Curve((cusp(1), cusp(2)))) == (8, 8)
    assert semigroup_conductor_bound(NODE) == (1, 1)
