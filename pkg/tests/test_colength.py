import pytest

from curvetau.colength import (IdealPair, colength_oracle, colength_pair, colength_pair_codim,
                               colength_truncation, in_ideal, lemma_tec_check)
from curvetau.corpus import builtin_curves, cusp, line_x, line_y
from curvetau.curve import Curve, lift
from curvetau.errors import NotIncluded
from curvetau.series import BivariatePoly
from curvetau.valueset import GeneratingFamily as G, semigroup

X, Y = BivariatePoly.X(), BivariatePoly.Y()
CURVES = builtin_curves()
NODE = Curve((line_x(), line_y()))
CUSP = Curve((cusp(),))


def _jacobian_pair(curve):
    f = curve.f
    return IdealPair.certified(G.ideal(curve, [f, f.diff_x(), f.diff_y()]), G.local_ring(curve))


@pytest.mark.parametrize("name, tau", [("node", 1), ("cusp", 2), ("saito2", 15), ("saito3", 40)])
def test_three_colengths_agree(name, tau):
    pair = _jacobian_pair(CURVES[name])
    assert colength_pair(pair) == colength_pair_codim(pair) == colength_oracle(pair) == tau


def test_local_ring_in_normalization_of_node():
    pair = IdealPair.certified(G.local_ring(NODE), G.product_ring(NODE))
    assert colength_oracle(pair) == colength_pair(pair) == colength_pair_codim(pair) == 1


def test_ideal_in_itself():
    fam = G.ideal(CUSP, [X, Y])
    pair = IdealPair.certified(fam, fam)
    assert colength_oracle(pair) == colength_pair(pair) == 0


def test_wrong_inclusion_rejected():
    with pytest.raises(NotIncluded):
        IdealPair.certified(G.local_ring(CUSP), G.ideal(CUSP, [X, Y]))
    with pytest.raises(NotIncluded):
        colength_pair(IdealPair(G.local_ring(CUSP), G.ideal(CUSP, [X, Y])))


@pytest.mark.parametrize("name", ["node", "cusp", "saito2", "three_lines"])
def test_truncation_grows_by_r(name):
    curve = CURVES[name]
    E = semigroup(curve)
    c = tuple(E.c)
    assert colength_truncation(E, tuple(v + 1 for v in c)) - colength_truncation(E, c) == curve.r
    with pytest.raises(ValueError):
        colength_truncation(E, tuple(v - 1 for v in c))


def test_truncation_small_values():
    assert colength_truncation(semigroup(NODE), (1, 1)) == 1
    assert colength_truncation(semigroup(CUSP), (2,)) == 1


def test_additivity_in_a_chain():
    curve = CURVES["saito2"]
    f = curve.f
    O = G.local_ring(curve)
    m = G.ideal(curve, [X, Y])
    jac = G.ideal(curve, [f, f.diff_x(), f.diff_y()])
    whole = colength_oracle(IdealPair.certified(jac, O))
    steps = colength_oracle(IdealPair.certified(jac, m)) + colength_oracle(IdealPair.certified(m, O))
    assert whole == steps == 15


@pytest.mark.parametrize("h, expected", [(X, (2, 2)), (Y, (3, 3)), (X + Y, (2, 2))])
def test_lemma_tec_on_cusp(h, expected):
    assert lemma_tec_check(h, G.local_ring(CUSP)) == expected


def test_lemma_tec_with_jacobian_inside():
    f = CUSP.f
    jac = G.ideal(CUSP, [f.diff_x(), f.diff_y()])
    assert lemma_tec_check(Y, G.local_ring(CUSP), jac) == (5, 5)


def test_lemma_tec_rejects_vanishing_h():
    line = Curve((line_x(),))
    with pytest.raises(ValueError):
        lemma_tec_check(X, G.local_ring(line))
    with pytest.raises(ValueError):
        lemma_tec_check(X, G.local_ring(NODE))


def test_in_ideal():
    m = G.ideal(CUSP, [X, Y])
    assert in_ideal(m, lift(CUSP, Y, 20))
    assert not in_ideal(m, lift(CUSP, BivariatePoly.const(1), 20))
