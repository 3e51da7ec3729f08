import pytest

from charloc.char_ring import LaurentPoly
from charloc.lattice import LatticeError
from charloc.localization import RationalChar, rc_dual, rc_eq
from charloc.series import BoxTooSmall
from charloc.sl2 import (
    Decomposition,
    NotDiscretelyDecomposable,
    Sl2Module,
    blattner,
    combination_character,
    kernel_relation_check,
    multiplicity_profile,
    restriction,
    sl2_character,
    tensor_decompose,
)

from conftest import X

F, Dp, Dm = Sl2Module.finite, Sl2Module.plus, Sl2Module.minus


def comb(start, stop):
    return {(k,): 1 for k in range(start, stop + 1, 2)}


def coeffs(s):
    return {w.coords: c for w, c in s.items()}


def test_module_ranges():
    with pytest.raises(LatticeError):
        Dp(0)
    with pytest.raises(LatticeError):
        F(-1)
    assert Sl2Module.parse("D-3") == Dm(3)
    assert Sl2Module.parse("D5") == Dp(5)
    assert Sl2Module.parse("F0") == F(0)


def test_character_examples():
    assert rc_eq(sl2_character(Dp(3)), RationalChar.over(LaurentPoly.monomial(X(3)), [X(2)]))
    assert rc_eq(sl2_character(F(0)), LaurentPoly.one(1))
    assert rc_eq(sl2_character(Dm(1)), rc_dual(sl2_character(Dp(1))))


def test_discrete_series_characters_cancel_in_the_localization():
    assert rc_eq(sl2_character(Dp(1)) + sl2_character(Dm(1)), LaurentPoly.zero(1))


def test_restrictions():
    assert coeffs(restriction(Dm(2), 9)) == {(-k,): 1 for k in range(2, 10, 2)}
    assert coeffs(restriction(F(3), 9)) == comb(-3, 3)


@pytest.mark.parametrize("k", [1, 2, 3, 7])
def test_blattner_comb(k):
    s = blattner(k, 41)
    assert coeffs(s) == comb(k, 41)
    assert s[X(k - 2)] == 0


def test_blattner_k1_is_shift_of_k3():
    assert coeffs(blattner(1, 41)) == {**comb(3, 41), (1,): 1}


def test_d5_times_f2():
    res = tensor_decompose(Dp(5), F(2))
    assert res == Decomposition(((Dp(7), 1), (Dp(5), 1), (Dp(3), 1)))


def test_f1_times_f1():
    assert tensor_decompose(F(1), F(1)) == Decomposition(((F(2), 1), (F(0), 1)))


def test_finite_finite_agrees_with_convolution_oracle():
    for k in range(0, 21, 4):
        for j in range(0, 21, 5):
            res = tensor_decompose(F(k), F(j))
            string = lambda n: LaurentPoly({X(n - 2 * i): 1 for i in range(n + 1)}, 1)
            total = LaurentPoly.zero(1)
            for m, c in res.summands:
                total = total + string(m.k) * c
            assert total == string(k) * string(j)


def test_discrete_times_finite_sweep():
    for k in range(1, 11):
        for j in range(0, 6):
            if k < j + 3:
                continue
            res = tensor_decompose(Dp(k), F(j))
            assert res.complete
            assert [m for m, _ in res.summands] == [Dp(k + j - 2 * i) for i in range(j + 1)]
            assert rc_eq(combination_character(res.summands), sl2_character(Dp(k)) * sl2_character(F(j)))


def test_minus_series_mirror():
    res = tensor_decompose(F(2), Dm(5))
    assert res.summands == ((Dm(7), 1), (Dm(5), 1), (Dm(3), 1))


def test_plus_times_plus_is_discrete_but_infinite():
    res = tensor_decompose(Dp(2), Dp(3), box=24)
    assert isinstance(res, Decomposition) and not res.complete
    assert all(m.kind == Sl2Module.PLUS for m, _ in res.summands)
    assert [m.k for m, _ in res.summands][-3:] == [9, 7, 5]


def test_plus_times_minus_is_not_discretely_decomposable():
    res = tensor_decompose(Dp(3), Dm(2))
    assert isinstance(res, NotDiscretelyDecomposable)
    growth = res.evidence["multiplicity_by_box"]
    assert growth["60"] > growth["30"] > 0


def test_low_weight_tensor_is_flagged():
    assert isinstance(tensor_decompose(Dp(1), F(2)), NotDiscretelyDecomposable)


def test_kernel_relation_as_written_fails():
    assert not kernel_relation_check(40)
    assert not kernel_relation_check(20)


def test_kernel_relation_with_plus_sign_holds():
    assert kernel_relation_check(20, sign=1)
    assert kernel_relation_check(40, sign=1)
    assert not kernel_relation_check(40, minus_k=3, sign=1)
    with pytest.raises(BoxTooSmall):
        kernel_relation_check(2)


def test_multiplicity_profiles():
    assert multiplicity_profile(Dp(3), 30) == {"odd": 1, "even": 0}
    assert multiplicity_profile(F(2), 30) == {"even": 1, "odd": 0}
    assert multiplicity_profile([(Dp(2), 1), (Dp(2), 1)], 30) == {"even": 2, "odd": 0}
