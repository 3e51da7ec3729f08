import itertools
import random

import pytest

from charloc.acceptance import load_datum
from charloc.char_ring import LaurentPoly
from charloc.lattice import InnerProduct, LatticeError, RootDatum, Weight, levi_datum
from charloc.localization import exact_divide, rc_add, rc_eq
from charloc.weyl_kostant import (
    NotDominant,
    check_duality,
    check_transitivity,
    cohomology_table,
    dual_highest_weight,
    euler_character,
    euler_numerator,
    finite_report,
    highest_weight_decomposition,
    kostant_cohomology,
    kostant_parabolic,
    restrict_finite,
    weyl_dimension,
)

from conftest import X

W = Weight.from_l0


def string(k):
    return LaurentPoly({X(k - 2 * j): 1 for j in range(k + 1)}, 1)


def test_sl2_k2_cohomology(sl2):
    assert kostant_cohomology(sl2, X(2), 0) == LaurentPoly.monomial(X(2))
    assert kostant_cohomology(sl2, X(2), 1) == LaurentPoly.monomial(X(-4))
    assert kostant_cohomology(sl2, X(0), 0) == LaurentPoly.one(1)


def test_a2_trivial_census(a2):
    table = cohomology_table(a2, W([0, 0]))
    assert [len(h) for h in table.values()] == [1, 2, 2, 1]


def test_non_dominant_rejected(a2):
    with pytest.raises(NotDominant):
        kostant_cohomology(a2, W([-1, 0]), 0)


def test_euler_character_sl2(sl2):
    c = euler_character(sl2, X(2))
    assert len(c.num) == 2 and len(c.den) == 1
    assert exact_divide(c) == string(2)
    assert rc_eq(euler_character(sl2, X(0)), LaurentPoly.one(1))


def test_standard_rep_of_a2(a2):
    p = restrict_finite(a2, W([1, 0]))
    # the weights of C^3 in the fundamental weight basis
    assert p == LaurentPoly({W([1, 0]): 1, W([-1, 1]): 1, W([0, -1]): 1})


def test_adjoint_rep_of_a2(a2):
    p = restrict_finite(a2, W([1, 1]))
    roots = set(a2.u_roots) | {-a for a in a2.u_roots}
    assert p == LaurentPoly({**{a: 1 for a in roots}, Weight.zero(2): 2})
    assert p.total() == 8 == weyl_dimension(a2, W([1, 1]))


def _tensor_oracle_a2(a2, lam, mu):
    """Character of the tensor product as the convolution of the two weight multisets."""
    return restrict_finite(a2, lam) * restrict_finite(a2, mu)


def test_a2_tensor_decomposition_3x3bar(a2):
    prod = _tensor_oracle_a2(a2, W([1, 0]), W([0, 1]))
    assert highest_weight_decomposition(a2, prod) == [(W([1, 1]), 1), (W([0, 0]), 1)]


@pytest.mark.parametrize("name", ["sl2", "a2", "a2_roots", "a1xa1", "a3"])
def test_mass_equals_dimension(name):
    d = load_datum(name)
    rng = random.Random(7)
    base = [d.rho_u * 2] + [Weight(tuple(2 * int(i == j) for j in range(d.rank))) for i in range(d.rank)]
    for _ in range(6):
        lam = Weight.zero(d.rank)
        for b in base:
            lam = lam + b * rng.randint(0, 1)
        if d.is_dominant(lam):
            assert restrict_finite(d, lam).total() == weyl_dimension(d, lam)


def test_dimension_examples(sl2, a2):
    assert weyl_dimension(sl2, X(2)) == 3
    assert weyl_dimension(a2, W([0, 0])) == 1
    assert weyl_dimension(a2, W([2, 1])) == 15


def test_kostant_support_is_multiplicity_free(a2):
    for lam in ([0, 0], [1, 0], [2, 3]):
        for q, h in cohomology_table(a2, W(lam)).items():
            assert all(c == 1 for _, c in h.items())
            assert len(h) == sum(1 for w in a2.weyl_group if w.length == q)


def test_parabolic_full_levi_gives_lambda(a2):
    lam = W([1, 1])
    assert kostant_parabolic(a2, a2, lam, 0) == [lam]
    assert kostant_parabolic(a2, a2, lam, 1) == []


def test_parabolic_trivial_module(a2, a2_levi):
    assert [len(kostant_parabolic(a2, a2_levi, W([0, 0]), q)) for q in range(3)] == [1, 1, 1]


def test_parabolic_standard_module(a2, a2_levi):
    """Levi constituents of H^q(u; C^3) and the character identity they satisfy."""
    lam = W([1, 0])
    parts = [kostant_parabolic(a2, a2_levi, lam, q) for q in range(3)]
    assert all(len(p) == 1 for p in parts)
    dims = [weyl_dimension(a2_levi, p[0]) for p in parts]
    assert dims == [2, 3, 1]
    # sum_q (-1)^q ch H^q(u; V) = ch V * prod_{u} (1 - [-alpha])
    lhs = LaurentPoly.zero(2)
    for q, p in enumerate(parts):
        h = restrict_finite(a2_levi, p[0])
        lhs = lhs + (h if q % 2 == 0 else -h)
    rhs = restrict_finite(a2, lam)
    for a in a2.u_roots:
        if a not in a2_levi.root_set:
            rhs = rhs * LaurentPoly({Weight.zero(2): 1, -a: -1})
    assert lhs == rhs


def test_invalid_levi_rejected(a2):
    bad = RootDatum(a2.inner, (W([1, 1]),))
    with pytest.raises(LatticeError):
        kostant_parabolic(a2, bad, W([1, 0]), 0)


@pytest.mark.parametrize("lam", [[1, 0], [0, 1], [1, 1], [2, 1], [0, 0], [3, 2]])
def test_transitivity_a2(a2, a2_levi, lam):
    assert check_transitivity(a2, a2_levi, W(lam))
    assert check_transitivity(a2, levi_datum(a2, [1]), W(lam))


def test_transitivity_trivial_torus_chain():
    torus = RootDatum(InnerProduct(((1, 0), (0, 1))), ())
    assert check_transitivity(torus, torus, Weight((0, 0)))
    assert check_transitivity(torus, torus, Weight((3, -1)))


def test_transitivity_a3_through_both_levis():
    a3 = load_datum("a3")
    lam = a3.rho_u
    for keep in ([0], [0, 1], [0, 2], [1, 2]):
        assert check_transitivity(a3, levi_datum(a3, keep), lam)


def test_duality_examples(sl2, a2):
    for k in range(8):
        assert check_duality(sl2, X(k))
    assert dual_highest_weight(a2, W([1, 0])) == W([0, 1])
    assert check_duality(a2, W([1, 0]))
    assert check_duality(a2, W([0, 0]))
    assert check_duality(a2, W([2, 1]))


def test_euler_multiplicativity_sl2(sl2):
    for k, j in itertools.product(range(5), repeat=2):
        prod = euler_character(sl2, X(k)) * euler_character(sl2, X(j))
        parts = highest_weight_decomposition(sl2, string(k) * string(j))
        total = euler_character(sl2, parts[0][0])
        for w, c in parts[1:]:
            total = rc_add(total, euler_character(sl2, w) * c)
        assert rc_eq(prod, total)


def test_euler_multiplicativity_a2(a2):
    for lam, mu in ((W([1, 0]), W([1, 0])), (W([1, 0]), W([0, 1])), (W([1, 1]), W([1, 0]))):
        prod = euler_character(a2, lam) * euler_character(a2, mu)
        parts = highest_weight_decomposition(a2, restrict_finite(a2, lam) * restrict_finite(a2, mu))
        total = euler_character(a2, parts[0][0]) * parts[0][1]
        for w, c in parts[1:]:
            total = rc_add(total, euler_character(a2, w) * c)
        assert rc_eq(prod, total)


def test_kuenneth_at_euler_level(sl2):
    """numerator(k) * numerator(j) = W * numerator of the product character."""
    wq = LaurentPoly({X(0): 1, X(-2): -1})
    for k, j in itertools.product(range(4), repeat=2):
        parts = highest_weight_decomposition(sl2, string(k) * string(j))
        num = LaurentPoly.zero(1)
        for w, c in parts:
            num = num + euler_numerator(sl2, w) * c
        assert euler_numerator(sl2, X(k)) * euler_numerator(sl2, X(j)) == wq * num


def test_finite_report_layout(a2):
    doc = finite_report(a2, W([1, 0]))
    assert set(doc) == {"lambda", "cohomology", "character", "restriction", "dimension"}
    assert doc["lambda"] == {"w2": [2, 0]}
    assert sorted(doc["cohomology"]) == ["0", "1", "2", "3"]
    assert doc["dimension"] == 3
