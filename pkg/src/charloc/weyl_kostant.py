"""Kostant cohomology and Weyl characters of finite-dimensional modules.

All functions take a ``RootDatum`` whose ``u_roots`` is the positive system of
a Borel subalgebra (the Levi factor is the Cartan), unless stated otherwise.
Sign convention: ``Delta(u)`` is positive, ``rho`` its half sum, and the Weyl
element is ``prod(1 - [-alpha])``.
"""

from __future__ import annotations

from fractions import Fraction

from .char_ring import LaurentPoly, weyl_element, weyl_factor
from .lattice import LatticeError, RootDatum, Weight, matrix_rank
from .localization import RationalChar, exact_divide, rc_add, rc_dual, rc_eq


class NotDominant(LatticeError):
    pass


class FormulaBug(AssertionError):
    """An identity that must hold for finite-dimensional input failed."""


def require_dominant(datum: RootDatum, lam: Weight) -> None:
    if lam.rank != datum.rank:
        raise LatticeError(f"rank mismatch: {lam.rank} vs {datum.rank}")
    if not datum.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")


def kostant_weights(datum: RootDatum, lam: Weight, q: int) -> list[Weight]:
    rho = datum.rho_u
    shifted = lam + rho
    return [w(shifted) - rho for w in datum.weyl_group if w.length == q]


def kostant_cohomology(datum: RootDatum, lam: Weight, q: int) -> LaurentPoly:
    """Torus character of ``H^q(u; V_lam)``: one weight ``w(lam+rho)-rho`` per ``w`` of length ``q``."""
    require_dominant(datum, lam)
    weights = kostant_weights(datum, lam, q)
    if len(set(weights)) != len(weights):
        raise FormulaBug("Kostant weights collided")
    return LaurentPoly({w: 1 for w in weights}, datum.rank)


def cohomology_table(datum: RootDatum, lam: Weight) -> dict[int, LaurentPoly]:
    return {q: kostant_cohomology(datum, lam, q) for q in range(len(datum.u_roots) + 1)}


def euler_numerator(datum: RootDatum, lam: Weight) -> LaurentPoly:
    out = LaurentPoly.zero(datum.rank)
    for q, h in cohomology_table(datum, lam).items():
        out = out + (h if q % 2 == 0 else -h)
    return out


def euler_character(datum: RootDatum, lam: Weight) -> RationalChar:
    """Alternating sum of the cohomology over the Weyl element (kept as factors)."""
    return RationalChar.over(euler_numerator(datum, lam), [-a for a in datum.u_roots])


def restrict_finite(datum: RootDatum, lam: Weight) -> LaurentPoly:
    """Full weight-multiplicity character of the irreducible module of highest weight ``lam``."""
    p = exact_divide(euler_character(datum, lam))
    if p is None:
        raise FormulaBug(f"Weyl character of {lam} is not a polynomial")
    return p


def weyl_dimension(datum: RootDatum, lam: Weight) -> int:
    require_dominant(datum, lam)
    rho = datum.rho_u
    num, den = Fraction(1), Fraction(1)
    for b in datum.u_roots:
        num *= datum.pair(lam + rho, b)
        den *= datum.pair(rho, b)
    d = num / den
    if d.denominator != 1 or d <= 0:
        raise FormulaBug(f"dimension {d} is not a positive integer")
    return int(d)


def _check_levi(datum_g: RootDatum, datum_l: RootDatum) -> None:
    if datum_l.inner != datum_g.inner:
        raise LatticeError("Levi datum must share the lattice and inner product")
    pos_g = datum_g.root_set
    if not datum_l.root_set <= pos_g:
        raise LatticeError("Levi roots must be positive roots of g")
    simple_g = set(datum_g.simple_roots)
    simple_l = datum_l.simple_roots
    if not set(simple_l) <= simple_g:
        raise LatticeError("Levi must be generated by simple roots of g")
    base = [a.coords for a in simple_l]
    r = matrix_rank(base) if base else 0
    for b in datum_g.u_roots:
        in_span = bool(base) and matrix_rank(base + [b.coords]) == r
        if in_span != (b in datum_l.root_set):
            raise LatticeError("Levi roots must be all positive roots in the span of its simple roots")


def kostant_parabolic(datum_g: RootDatum, datum_l: RootDatum, lam: Weight, q: int) -> list[Weight]:
    """Levi highest weights ``w(lam+rho)-rho`` over minimal coset representatives of length ``q``."""
    _check_levi(datum_g, datum_l)
    require_dominant(datum_g, lam)
    rho = datum_g.rho_u
    pos = datum_g.root_set
    out = []
    for w in datum_g.weyl_group:
        if w.length != q:
            continue
        winv = datum_g.inverse(w)
        if all(winv(a) in pos for a in datum_l.simple_roots):
            out.append(w(lam + rho) - rho)
    return out


def levi_u_roots(datum_g: RootDatum, datum_l: RootDatum) -> list[Weight]:
    levi = datum_l.root_set
    return [a for a in datum_g.u_roots if a not in levi]


def check_transitivity(datum_g: RootDatum, datum_l: RootDatum, lam: Weight) -> bool:
    """One-step Borel character of ``V_lam`` against the route through the Levi ``l``.

    Two-step side: Kostant's theorem for the parabolic gives Levi constituents
    in each degree; their Borel characters for ``l`` are summed with signs and
    divided by the Weyl element of ``u``.
    """
    _check_levi(datum_g, datum_l)
    require_dominant(datum_g, lam)
    one_step = euler_character(datum_g, lam)

    u = levi_u_roots(datum_g, datum_l)
    acc = RationalChar.over(LaurentPoly.zero(datum_g.rank), [-a for a in datum_l.u_roots])
    for q in range(len(u) + 1):
        for mu in kostant_parabolic(datum_g, datum_l, lam, q):
            c = euler_character(datum_l, mu)
            acc = rc_add(acc, c if q % 2 == 0 else -c)
    two_step = RationalChar(acc.num, acc.den + tuple(weyl_factor(a) for a in u))

    # W_p = W_{p cap l} * W_u, factor by factor and as polynomials
    split = weyl_element(datum_l)
    for a in u:
        split = split * weyl_factor(a)
    if split != weyl_element(datum_g):
        return False
    return rc_eq(one_step, two_step)


def dual_highest_weight(datum: RootDatum, lam: Weight) -> Weight:
    return -datum.longest_element(lam)


def check_duality(datum: RootDatum, lam: Weight) -> bool:
    """Character of the dual module against the dual of the character."""
    require_dominant(datum, lam)
    star = dual_highest_weight(datum, lam)
    require_dominant(datum, star)
    return rc_eq(euler_character(datum, star), rc_dual(euler_character(datum, lam)))


def highest_weight_decomposition(datum: RootDatum, p: LaurentPoly) -> list[tuple[Weight, int]]:
    """Split a Weyl-invariant character into irreducibles by peeling highest weights."""
    rho = datum.rho_u
    out = []
    rest = p
    while not rest.is_zero():
        top = max(rest.support(), key=lambda w: (datum.pair(w, rho), w.coords))
        c = rest.coefficient(top)
        if not datum.is_dominant(top):
            raise LatticeError(f"character is not Weyl invariant: top weight {top} not dominant")
        out.append((top, c))
        rest = rest - restrict_finite(datum, top) * c
    return out


def finite_report(datum: RootDatum, lam: Weight) -> dict:
    """The JSON document for one highest weight."""
    table = cohomology_table(datum, lam)
    return {
        "lambda": {"w2": list(lam.coords)},
        "cohomology": {str(q): h.to_json() for q, h in table.items()},
        "character": euler_character(datum, lam).to_json(),
        "restriction": restrict_finite(datum, lam).to_json(),
        "dimension": weyl_dimension(datum, lam),
    }
