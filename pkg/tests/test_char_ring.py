import pytest

from charloc.acceptance import SHIPPED, load_datum
from charloc.char_ring import (
    LaurentPoly,
    exterior_weyl_element,
    poly_dual,
    restrict_weights,
    top_exterior_weight,
    weyl_element,
)
from charloc.lattice import InnerProduct, LatticeError, RootDatum, Weight

from conftest import X


def P(d):
    return LaurentPoly({X(k): c for k, c in d.items()}, 1)


def test_zero_coefficients_are_dropped():
    p = P({1: 2, 3: 0}) + P({1: -2})
    assert p.is_zero() and len(p) == 0
    assert P({2: 1}).support() == [X(2)]


def test_rank_mismatch():
    with pytest.raises(LatticeError):
        P({1: 1}) + LaurentPoly.one(2)
    with pytest.raises(LatticeError):
        LaurentPoly({})


def test_difference_of_squares():
    assert P({1: 1, -1: 1}) * P({1: 1, -1: -1}) == P({2: 1, -2: -1})


def test_unit():
    a = P({3: 2, -1: 5})
    assert a * LaurentPoly.one(1) == a


def test_telescoping():
    string = P({2: 1, 0: 1, -2: 1})
    assert P({0: 1, 2: -1}) * string == P({-2: 1, 4: -1})


def test_dual_examples():
    assert poly_dual(P({5: 1})) == P({-5: 1})
    assert poly_dual(LaurentPoly.one(1)) == LaurentPoly.one(1)
    assert poly_dual(P({0: 1, 2: -1})) == P({0: 1, -2: -1})


def test_weyl_element_examples(a2):
    sl2 = load_datum("sl2")
    assert weyl_element(sl2) == P({0: 1, -2: -1})
    empty = RootDatum(InnerProduct(((1,),)), ())
    assert weyl_element(empty) == LaurentPoly.one(1)
    assert len(weyl_element(a2)) == 6


@pytest.mark.parametrize("name", SHIPPED)
def test_exterior_expansion_matches_product(name):
    d = load_datum(name)
    assert exterior_weyl_element(d) == weyl_element(d)


@pytest.mark.parametrize("name", SHIPPED)
def test_poincare_duality_of_weyl_element(name):
    d = load_datum(name)
    w = weyl_element(d)
    sign = -1 if len(d.u_roots) % 2 else 1
    assert LaurentPoly.monomial(top_exterior_weight(d), sign) * poly_dual(w) == w


def test_restrict_weights_examples():
    a = LaurentPoly({Weight((1, 0)): 1, Weight((0, 1)): 1})
    assert restrict_weights([[1, 0], [0, 1]], a) == a
    assert restrict_weights([[1, 1]], a) == P({1: 2})
    b = LaurentPoly({Weight((3, -1)): 4, Weight((0, 2)): -1})
    assert restrict_weights([[0, 0]], b) == LaurentPoly.one(1) * 3


def test_json_round_trip():
    a = LaurentPoly({Weight((3, -1)): 4, Weight((0, 2)): -1})
    doc = a.to_json()
    assert doc == {"terms": [{"w2": [0, 2], "c": -1}, {"w2": [3, -1], "c": 4}]}
    assert LaurentPoly.from_json(doc) == a
    assert LaurentPoly.from_json({"terms": []}, 2) == LaurentPoly.zero(2)
    with pytest.raises(LatticeError):
        LaurentPoly.from_json({"terms": [{"w2": [1]}]})


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        P({1: 1}) ** -1
