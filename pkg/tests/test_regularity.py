from fractions import Fraction

import pytest

from charloc.lattice import InnerProduct, LatticeError, RootDatum, Weight
from charloc.regularity import (
    CombinatorialBlowup,
    RegularityInstance,
    admissible_S,
    admissible_Sprime,
    check_condition_S,
    check_condition_Sprime,
    check_multiplicity_bound,
    threshold,
)
from charloc.acceptance import regularity_window_agreement

# alpha has <alpha, alpha> = 1; beta = 2 alpha
INNER = InnerProduct(((1,),))
BETA = Weight.from_l0([2])
COMPACT = RootDatum(INNER, (BETA,))


def inst(lam, **kw):
    return RegularityInstance(COMPACT, (BETA,), Weight.from_l0([lam]), **kw)


def test_default_anchor_is_rho():
    assert inst(0).lambda0 == Weight.from_l0([1])


def test_condition_S_examples():
    assert check_condition_S(inst(3)).holds
    res = check_condition_S(inst(0))
    assert not res.holds
    # lexicographically least violator: identity, the only beta, n = 0
    assert res.witness.w_index == 0 and res.witness.w_word == ()
    assert res.witness.n == (0,)
    assert (res.witness.lhs, res.witness.rhs) == (0, 4)


def test_condition_S_n1_also_violates_at_zero():
    """Both admissible exponents fail at lambda = 0, the smaller one is reported."""
    assert threshold(inst(0), 0, (0,)) == 4
    assert threshold(inst(0), 0, (1,)) == 6
    assert check_condition_S(inst(0)).witness.lhs < threshold(inst(0), 0, (0,))


def test_empty_betas_vacuous():
    empty = RegularityInstance(COMPACT, (), Weight.from_l0([0]))
    assert check_condition_S(empty).holds and check_condition_Sprime(empty).holds


def test_admissible_exponents():
    assert admissible_S(inst(0)) == [(0,), (1,)]
    assert admissible_Sprime(inst(0, b=0)) == [(0,)]
    assert admissible_Sprime(inst(0, b=2)) == [(2,)]


def test_condition_Sprime_examples():
    # b = 0: threshold 1/2 <b,b> + 1/2 <b,b> = 4
    assert check_condition_Sprime(inst(3, b=0)).holds
    assert not check_condition_Sprime(inst(2, b=0)).holds
    # b = 1: n = (1), threshold 6, i.e. |<lam - lam0, beta>| >= 6 <=> |lam - 1| >= 3
    assert check_condition_Sprime(inst(4, b=1)).holds
    assert not check_condition_Sprime(inst(3, b=1)).holds
    assert not check_condition_Sprime(inst(1, b=1)).holds


def test_include_first_flag_lowers_threshold():
    assert not check_condition_S(inst(2)).holds
    assert check_condition_S(inst(2, include_first=False)).holds


def test_monotone_in_distance():
    holds = [check_condition_S(inst(Fraction(x, 2))).holds for x in range(0, 41)]
    first = holds.index(True)
    assert all(holds[first:])


def test_multiplicity_bound_examples():
    profile = {Weight((k,)): 1 for k in range(3, 40, 2)}
    assert check_multiplicity_bound(profile, inst(0, b=0, cX=1, dX=0))
    assert not check_multiplicity_bound({Weight((3,)): 5}, inst(0, b=0, cX=1, dX=0))
    assert check_multiplicity_bound({}, inst(0))


def test_multiplicity_bound_polynomial_growth():
    # <lam + rho, beta> = 2 (l + 1) for lam = l alpha
    profile = {Weight.from_l0([l]): 2 * (l + 1) for l in range(10)}
    assert check_multiplicity_bound(profile, inst(0, b=1, cX=1))
    assert not check_multiplicity_bound(profile, inst(0, b=1, cX=Fraction(1, 2)))


def test_validation():
    with pytest.raises(LatticeError):
        RegularityInstance(COMPACT, (BETA, BETA), Weight.from_l0([0]))
    with pytest.raises(LatticeError):
        inst(0, b=-1)
    with pytest.raises(LatticeError):
        inst(0, cX=-1)


def test_cap_guard():
    with pytest.raises(CombinatorialBlowup):
        check_condition_Sprime(inst(0, b=3, cap=0))


def test_json_config():
    doc = {"datum": COMPACT.to_json(), "betas": [[2]], "lambda": [3], "b": 1, "cX": "1/2"}
    i = RegularityInstance.from_json(doc)
    assert i.cX == Fraction(1, 2) and i.lam == Weight.from_l0([3])
    with pytest.raises(LatticeError):
        RegularityInstance.from_json({"betas": []})


def test_condition_S_matches_window_picture():
    assert regularity_window_agreement(inst(0), radius=30) == []
    so2 = RegularityInstance(RootDatum(INNER, ()), (BETA,), Weight.from_l0([0]))
    assert regularity_window_agreement(so2, radius=30) == []


def test_rank_two_orthogonal_instance():
    inner = InnerProduct(((1, 0), (0, 1)))
    b1, b2 = Weight.from_l0([2, 0]), Weight.from_l0([0, 2])
    d = RootDatum(inner, (b1, b2))
    far = RegularityInstance(d, (b1, b2), Weight.from_l0([6, 6]))
    near = RegularityInstance(d, (b1, b2), Weight.from_l0([6, 0]))
    assert check_condition_S(far).holds
    res = check_condition_S(near)
    assert not res.holds and res.witness.beta1 == b2
