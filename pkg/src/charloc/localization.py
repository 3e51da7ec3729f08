"""Rational characters: the localization of Z[L] at products of ``1 - [gamma]``."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

from .char_ring import LaurentPoly, poly_dual
from .lattice import LatticeError, Weight


def factor_exponent(f: LaurentPoly) -> Weight:
    """For ``f = 1 - [gamma]`` return ``gamma``; reject anything else."""
    items = list(f.items())
    unit = Weight.zero(f.rank)
    if len(items) != 2 or f.coefficient(unit) != 1:
        raise LatticeError(f"denominator factor must look like 1 - [gamma], got {f!r}")
    (gamma, c), = [(w, c) for w, c in items if w != unit]
    if c != -1:
        raise LatticeError(f"denominator factor must look like 1 - [gamma], got {f!r}")
    return gamma


def _factor(gamma: Weight) -> LaurentPoly:
    return LaurentPoly({Weight.zero(gamma.rank): 1, gamma: -1})


def divide_by_factor(p: LaurentPoly, gamma: Weight) -> LaurentPoly | None:
    """Exact quotient ``p / (1 - [gamma])`` or ``None``.

    Terms are grouped into cosets of ``Z*gamma``; on each coset the quotient is
    obtained by eliminating the lowest term repeatedly, i.e. by partial sums.
    """
    if gamma.is_zero():
        raise LatticeError("1 - [0] is a zero divisor")
    i = next(j for j, c in enumerate(gamma.coords) if c)
    g = gamma.coords
    lines: dict[tuple[int, ...], dict[int, int]] = {}
    for k, v in p.raw_items():
        t = k[i] // g[i]
        base = tuple(x - t * y for x, y in zip(k, g))
        lines.setdefault(base, {})[t] = v
    out: dict[tuple[int, ...], int] = {}
    for base, line in lines.items():
        if sum(line.values()) != 0:
            return None
        run = 0
        for t in range(min(line), max(line)):
            run += line.get(t, 0)
            if run:
                out[tuple(x + t * y for x, y in zip(base, g))] = run
    return LaurentPoly._raw(out, p.rank)


class RationalChar:
    """``num / prod(den)`` with every factor of the shape ``1 - [gamma]``.

    ``==`` is equality in the localization (cross-multiplication), so these
    values are deliberately unhashable.
    """

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num: LaurentPoly, den: Iterable[LaurentPoly] = ()):
        den = tuple(den)
        for f in den:
            factor_exponent(f)
            if f.rank != num.rank:
                raise LatticeError("rank mismatch between numerator and denominator")
        self.num = num
        self.den = tuple(sorted(den, key=lambda f: tuple(f.raw_items())))

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalChar":
        return cls(p, ())

    @classmethod
    def over(cls, num: LaurentPoly, gammas: Iterable[Weight]) -> "RationalChar":
        """``num / prod(1 - [gamma])``."""
        return cls(num, (_factor(g) for g in gammas))

    @property
    def rank(self) -> int:
        return self.num.rank

    def den_product(self) -> LaurentPoly:
        out = LaurentPoly.one(self.rank)
        for f in self.den:
            out = out * f
        return out

    def den_exponents(self) -> list[Weight]:
        return [factor_exponent(f) for f in self.den]

    def __add__(self, other):
        return rc_add(self, _coerce(other, self.rank))

    __radd__ = __add__

    def __sub__(self, other):
        return rc_add(self, -_coerce(other, self.rank))

    def __neg__(self):
        return RationalChar(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return RationalChar(self.num * other, self.den)
        return rc_mul(self, _coerce(other, self.rank))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (RationalChar, LaurentPoly)):
            return rc_eq(self, _coerce(other, self.rank))
        return NotImplemented

    def dual(self) -> "RationalChar":
        return rc_dual(self)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": [f.to_json() for f in self.den]}

    @classmethod
    def from_json(cls, doc: Mapping, rank: int | None = None) -> "RationalChar":
        try:
            den = [LaurentPoly.from_json(f) for f in doc.get("den", [])]
            if rank is None and den:
                rank = den[0].rank
            num = LaurentPoly.from_json(doc["num"], rank)
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"malformed rational character: {exc}") from exc
        return cls(num, den)

    def __repr__(self) -> str:
        if not self.den:
            return f"({self.num!r})"
        return f"({self.num!r}) / " + " ".join(f"({f!r})" for f in self.den)


def _coerce(x, rank: int) -> RationalChar:
    if isinstance(x, RationalChar):
        return x
    if isinstance(x, LaurentPoly):
        return RationalChar.from_poly(x)
    if isinstance(x, int):
        return RationalChar.from_poly(LaurentPoly.one(rank) * x)
    raise TypeError(f"cannot treat {type(x).__name__} as a rational character")


def _check(x: RationalChar, y: RationalChar):
    if x.rank != y.rank:
        raise LatticeError(f"rank mismatch: {x.rank} vs {y.rank}")


def _times(p: LaurentPoly, factors: Iterable[LaurentPoly]) -> LaurentPoly:
    for f in factors:
        p = p * f
    return p


def rc_add(x: RationalChar, y: RationalChar) -> RationalChar:
    """Sum over the smallest common multiset of factors."""
    _check(x, y)
    cx, cy = Counter(x.den), Counter(y.den)
    common = cx | cy
    num = _times(x.num, (cy - cx).elements()) + _times(y.num, (cx - cy).elements())
    return RationalChar(num, common.elements())


def rc_mul(x: RationalChar, y: RationalChar) -> RationalChar:
    _check(x, y)
    return RationalChar(x.num * y.num, x.den + y.den)


def rc_dual(x: RationalChar) -> RationalChar:
    """Contragredient, keeping the denominator factors.

    ``dual(1 - [gamma]) = -[-gamma] * (1 - [gamma])``, so each factor moves a
    unit ``-[gamma]`` into the numerator.
    """
    num = poly_dual(x.num)
    for f in x.den:
        num = num * LaurentPoly.monomial(factor_exponent(f), -1)
    return RationalChar(num, x.den)


def rc_eq(x: RationalChar, y: RationalChar) -> bool:
    x, y = _coerce(x, y.rank), _coerce(y, x.rank)
    _check(x, y)
    cx, cy = Counter(x.den), Counter(y.den)
    # cancelling the shared factors first is legitimate in a domain
    return _times(x.num, (cy - cx).elements()) == _times(y.num, (cx - cy).elements())


def rc_simplify(x: RationalChar) -> RationalChar:
    """Cancel every factor that divides the numerator exactly."""
    num, kept = x.num, []
    for f in x.den:
        q = divide_by_factor(num, factor_exponent(f))
        if q is None:
            kept.append(f)
        else:
            num = q
    return RationalChar(num, kept)


def exact_divide(x: RationalChar) -> LaurentPoly | None:
    """The polynomial ``p`` with ``p * prod(den) == num``, if one exists."""
    p = x.num
    for f in x.den:
        p = divide_by_factor(p, factor_exponent(f))
        if p is None:
            return None
    return p
